// Index loops mirror the matrix and lattice formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod complex;
pub mod divisor;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod point;
pub mod subdivision;
pub mod surface;
