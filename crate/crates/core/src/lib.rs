//! Exact characters of symmetric groups, free cumulants of Young diagrams and
//! Kerov polynomials.
//!
//! Normalized characters are computed along three independent routes that
//! can be checked against one another: the Murnaghan–Nakayama rule
//! ([`characters`]), the Stanley sum over unicellular maps ([`maps`]), and
//! Kerov polynomials in the free cumulants ([`cumulants`], [`kerov`]). The
//! coefficients of the Kerov polynomials are in turn recounted through a
//! strictly positive transportation problem on decorated maps
//! ([`transport`]). [`restrict`] simulates the restriction of irreducible
//! representations to smaller symmetric groups.

pub mod characters;
pub mod cumulants;
pub mod error;
pub mod kerov;
pub mod linalg;
pub mod maps;
pub mod partition;
pub mod permutation;
pub mod poly;
pub mod restrict;
pub mod transport;
pub mod verify;

pub use characters::{ClassLabel, CycleArgument};
pub use error::{Error, Result};
pub use kerov::KerovConfig;
pub use maps::{BipartiteMap, MapConfig};
pub use partition::Partition;
pub use permutation::Permutation;
pub use poly::{Monomial, RPolynomial};
pub use transport::DecoratedMap;
