//! Exact square matrices over scalars or polynomials, with the truncated
//! exponential and logarithm.

mod matrix;
mod series;
mod solve;

pub use matrix::{Matrix, Ring, ScalarMatrix};
pub use series::{exp_nilpotent, log_unipotent, nilpotency_index, CharBound};
pub use solve::{inverse, nullspace, rank, row_reduce};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is not nilpotent within {cap} powers")]
    NotNilpotent { cap: usize },
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("nilpotency index {index} exceeds the series bound {bound:?}")]
    SeriesTermination { index: usize, bound: CharBound },
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
