pub mod error;
pub mod expr;
pub mod formsbridge;
pub mod laplacians;
pub mod master;
pub mod random;
pub mod brackets;
pub mod charts;
pub mod cli;
pub mod scalar;
pub mod suite;
pub mod superalgebra;

pub use error::{Error, Result};
