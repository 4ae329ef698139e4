//! The free associative algebra on two generators, the homogeneous
//! components of `log(e^x e^y)`, and the Dynkin projection onto
//! left-nested brackets.

mod free;
mod series;

pub use free::{bracket_normalize, dynkin_projection, left_nested_expand, BracketTree, FreeElement, FreeWord, Gen};
pub use series::{
    bch_components, bch_evaluate, denominator_audit, denominator_lcm, homogeneous_component, log_product_series,
};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BchError {
    #[error("the Dynkin projection is undefined on the unit word")]
    DegreeZero,
    #[error("component P_{component} has a denominator divisible by {p}")]
    Denominator { component: usize, p: u64 },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
