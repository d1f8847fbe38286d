//! Marked order, marked chain and marked chain-order polytopes.
//!
//! The crate builds exact H-representations of the three polytope families
//! of a marked poset, decides 2-levelness both geometrically and through the
//! combinatorial criteria on the poset, and computes Ehrhart polynomials by
//! lattice-point counting and by a sum over linear extensions. All
//! arithmetic is exact.

pub mod corpus;
pub mod ehrhart;
pub mod error;
pub mod fixtures;
pub mod limits;
mod linalg;
pub mod marked;
pub mod polynomial;
pub mod polytope;
pub mod poset;
pub mod two_level;

pub use error::{Error, Result};
pub use polynomial::UnivariatePolynomial;
pub use polytope::{HRepresentation, LinearInequality, VRepresentation};
pub use poset::{ChainOrderPartition, MarkedPoset, Poset};

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
