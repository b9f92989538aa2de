//! Exact computational kernel for cluster algebras, their quantum and Poisson
//! versions, torus-invariant strata, and the seeds on double Bruhat cells of
//! `SL_n`.

pub mod bruhat;
pub mod cluster;
pub mod error;
pub mod kernel;
pub mod poisson;
pub mod quantum;
pub mod strata;

pub use error::{Error, Result};
pub use kernel::{
    exact_divide, exact_divide_q, integer_kernel, lattice_span_rank, q_binomial, q_multiply,
    IntMatrix, Lattice, LaurentPoly, QScalar, QTorusElement, RatMatrix,
};
