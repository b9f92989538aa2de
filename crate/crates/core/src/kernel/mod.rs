//! Exact arithmetic shared by every other module: integer matrices and
//! lattices, commutative Laurent polynomials, `Z[q^{±1/2}]` scalars and
//! quantum torus elements.

pub mod laurent;
pub mod lattice;
pub mod matrix;
pub mod qscalar;
pub mod qtorus;

pub use laurent::{exact_divide, Exponent, LaurentPoly};
pub use lattice::{integer_kernel, lattice_span_rank, Lattice};
pub use matrix::{fmt_rational, parse_rational, rational_determinant, solve_rational, IntMatrix, RatMatrix};
pub use qscalar::{q_binomial, QScalar};
pub use qtorus::{exact_divide_q, q_multiply, QTorusElement};
