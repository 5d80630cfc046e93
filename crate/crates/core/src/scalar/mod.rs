//! Exact even coefficients: Gaussian rationals, polynomials and rational functions.

mod gauss;
mod poly;
mod ratfunc;

pub use gauss::GaussianRational;
pub use poly::{EvenVar, Monomial, Poly};
pub use ratfunc::Scalar;
