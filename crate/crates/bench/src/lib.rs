//! Benchmark inputs shared by the criterion targets in `benches/`.

use symchar_core::Partition;

/// Staircase and rectangular diagrams of increasing size.
pub fn sample_diagrams() -> Vec<Partition> {
    vec![
        Partition::staircase(4),
        Partition::new(vec![4, 4, 4]).unwrap(),
        Partition::staircase(6),
        Partition::new(vec![8, 6, 5, 3, 2, 1]).unwrap(),
    ]
}
