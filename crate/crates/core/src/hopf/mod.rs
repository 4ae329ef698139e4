//! The coordinate Hopf algebra `A_n = k[x_ij : 1 <= i < j <= n]` of the
//! unipotent upper triangular group, with its coproduct and counit.

mod coproduct;
mod exponent;
mod polynomial;
mod tensor;

pub use coproduct::{
    coassociativity_sides, coproduct, generator_coproduct, matrix_product_tensor_side, CoproductCache, TripleTensor,
};
pub use exponent::{pair_index, variable_count, ExponentMatrix, Variable};
pub use polynomial::{
    constant_poly_matrix, evaluate_matrix, frobenius_substitute_matrix, generic_element, PolyMatrix, Polynomial,
};
pub use tensor::{TensorElement, TensorGrid};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error("index ({i}, {j}) is not a coordinate of U_{n}")]
    Index { i: usize, j: usize, n: usize },
    #[error("shape error: {0}")]
    Shape(String),
}
