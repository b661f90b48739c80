//! Exact rational dense linear algebra.

mod matrix;
mod rational;
mod reduce;

pub use matrix::{commutation_matrix, kron, kron_all, mat_mul, RatMatrix};
pub use rational::Rational;
pub use reduce::{cokernel, inverse, is_iso, rank, rref, Cokernel};
