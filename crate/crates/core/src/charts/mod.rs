//! Darboux charts, transitions, Berezinians and semidensities.

mod density;
mod lie;
mod supermatrix;
mod transition;

pub use density::*;
pub use lie::*;
pub use supermatrix::{det_even, inverse_even, SuperMatrix};
pub use transition::{coordinates, BracketMismatch, SymplecticReport, Transition};
