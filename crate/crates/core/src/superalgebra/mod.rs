//! The Grassmann algebra of functions on a superspace.

mod function;
mod generators;
mod parity;

pub use function::{ChartId, Substitution, SuperFunction};
pub use generators::{Coord, OddGen, OddKind, ThetaMonomial};
pub use parity::Parity;
