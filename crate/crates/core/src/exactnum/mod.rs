//! Exact scalar, matrix and polynomial arithmetic over the Gaussian rationals.

mod gaussian;
mod matrix;
mod poly;

pub use gaussian::GaussianRational;
pub use matrix::{mat_inverse, mat_rank, ExactMatrix};
pub use poly::{poly_roots_exact, poly_roots_partial, ExactPolynomial, RootFactorization};
