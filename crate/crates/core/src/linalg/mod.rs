//! Exact linear algebra over the integers and rationals.

mod charpoly;
mod lattice;
mod matrix;
mod rational;
mod smith;

use num_bigint::BigInt;
use thiserror::Error;

pub use charpoly::{characteristic_polynomial, real_root_signs, sign_variations};
pub use lattice::{
    cokernel, content, hermite_normal_form, integer_kernel, same_lattice, saturate, solve_integer, AbelianGroup,
};
pub use matrix::{IntMatrix, Matrix, RationalMatrix};
pub use rational::{
    determinant, int_determinant, left_kernel, primitive_integer_vector, rank, right_kernel, row_echelon,
    solve_rational, RowEchelon,
};
pub use smith::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inconsistent system; certificate y with yA = 0 and yb != 0: {certificate:?}")]
    Inconsistent { certificate: Vec<BigInt> },
}
