//! Exact scalar arithmetic and the integer combinatorics built on it.

mod combinatorics;
mod scalar;

pub use combinatorics::{
    binomial, factorial, gamma_factor, matrix_multinomial, multinomial, p_ary_digits, sum_carries, PAryDigits,
};
pub use scalar::{denominator_divisible, rational, Field, Scalar, MAX_MODULUS};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("cannot combine scalars from {left} and {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("{0} is not an accepted prime modulus")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational {value} has a denominator divisible by {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },
    #[error("residue {value} is outside [0, {p})")]
    ResidueOutOfRange { value: u64, p: u64 },
    #[error("malformed scalar {0:?}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
}
