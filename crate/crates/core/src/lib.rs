//! Exact decision procedure for temperedness of homogeneous spaces.
//!
//! Given the weights of a maximal split abelian subalgebra acting on a
//! reductive pair (g, h), the engine computes the sharp decay exponent
//! of the orbital volume function as an exact rational number, decides
//! temperedness of the associated unitary representation, and reports
//! the even integrability threshold.  All verdict-relevant arithmetic
//! is exact (arbitrary-precision rationals); floating point appears
//! only in the optional numerical cross-checks and Monte Carlo volume
//! estimates.
//!
//! Module map:
//! - [`linalg`]: rational scalars, vectors, linear forms, exact kernels.
//! - [`weights`]: weight multisets, support functions, reductive pairs.
//! - [`catalog`]: ready-made families of pairs with their charts, plus
//!   a matrix-realization oracle that recomputes weights from scratch.
//! - [`fan`]: hyperplane arrangements, critical rays, chamber certificates.
//! - [`criterion`]: the exponent computation and temperedness verdict.
//! - [`volume`]: exact box-intersection volumes and Monte Carlo checks.

pub mod catalog;
pub mod criterion;
pub mod error;
pub mod fan;
pub mod linalg;
pub mod volume;
pub mod weights;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
