//! Exact computation with representations of unipotent upper triangular
//! groups over prime fields and the rationals.

pub mod arith;
pub mod bch;
pub mod hopf;
pub mod linalg;
pub mod rep;
pub mod splitting;
