use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("size mismatch: |lambda| = {lambda} but the class has {class} points")]
    SizeMismatch { lambda: usize, class: usize },
    #[error("{what} = {value} is outside the allowed range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("the empty diagram has no removable box")]
    EmptyDiagram,
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("linear system is rank deficient ({rank} < {columns}) after {rows} rows")]
    RankDeficient {
        rows: usize,
        columns: usize,
        rank: usize,
    },
    /// An independent check disagreed with a computed value. Always a bug.
    #[error("consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for failures that indicate an internal bug rather than bad input.
    pub fn is_consistency_failure(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
