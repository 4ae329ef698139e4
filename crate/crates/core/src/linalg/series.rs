//! Truncated exponential and logarithm series for nilpotent and unipotent
//! matrices

use super::{LinalgError, Matrix, Ring};
use crate::arith::{factorial, Scalar};

/// Upper bound a series' nilpotency index may reach before the series
/// would need a denominator that vanishes in the scalar field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharBound {
    /// Characteristic zero: any index is allowed.
    Unbounded,
    /// Characteristic `p`: the index must not exceed `p`.
    Char(u64),
}

impl CharBound {
    pub fn from_characteristic(p: u64) -> Self {
        if p == 0 {
            CharBound::Unbounded
        } else {
            CharBound::Char(p)
        }
    }

    fn admits(&self, index: usize) -> bool {
        match self {
            CharBound::Unbounded => true,
            CharBound::Char(p) => index as u64 <= *p,
        }
    }
}

/// Least `k <= cap` with `m^k = 0`.
pub fn nilpotency_index<T: Ring>(m: &Matrix<T>, cap: usize) -> Result<usize, LinalgError> {
    Ok(nilpotent_powers(m, cap)?.len())
}

/// The powers `m^0 = I, m^1, ..., m^{k-1}` where `k` is the nilpotency index.
fn nilpotent_powers<T: Ring>(m: &Matrix<T>, cap: usize) -> Result<Vec<Matrix<T>>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Shape("nilpotency needs a square matrix".into()));
    }
    if cap == 0 {
        return Err(LinalgError::Shape("nilpotency cap must be positive".into()));
    }
    let mut powers = vec![Matrix::identity(m.rows(), m.proto())];
    let mut current = m.clone();
    for _ in 0..cap {
        if current.is_zero() {
            return Ok(powers);
        }
        let next = current.mul(m);
        powers.push(current);
        current = next;
    }
    Err(LinalgError::NotNilpotent { cap })
}

/// `sum_{k < index} x^k / k!`, where `index` is the measured nilpotency
/// index of `x`; `bound` rejects indices that would divide by zero.
pub fn exp_nilpotent<T: Ring>(x: &Matrix<T>, bound: CharBound) -> Result<Matrix<T>, LinalgError> {
    // a nilpotent d x d matrix over a domain has index at most d
    let powers = nilpotent_powers(x, x.rows())?;
    if !bound.admits(powers.len()) {
        return Err(LinalgError::SeriesTermination { index: powers.len(), bound });
    }
    let field = x.field();
    let mut acc = Matrix::zeros(x.rows(), x.cols(), x.proto());
    for (k, pk) in powers.iter().enumerate() {
        let coeff = field.one().try_div(&field.from_biguint(&factorial(k as u64)))?;
        acc = acc.add(&pk.scale(&coeff));
    }
    Ok(acc)
}

/// `sum_{k=1}^{index-1} (-1)^{k-1}/k (g - 1)^k` for unipotent `g`.
pub fn log_unipotent<T: Ring>(g: &Matrix<T>, bound: CharBound) -> Result<Matrix<T>, LinalgError> {
    if !g.is_square() {
        return Err(LinalgError::Shape("logarithm needs a square matrix".into()));
    }
    let n = g.sub(&Matrix::identity(g.rows(), g.proto()));
    let powers = nilpotent_powers(&n, g.rows()).map_err(|_| LinalgError::NotUnipotent)?;
    if !bound.admits(powers.len()) {
        return Err(LinalgError::SeriesTermination { index: powers.len(), bound });
    }
    let field = g.field();
    let mut acc = Matrix::zeros(g.rows(), g.cols(), g.proto());
    for (k, pk) in powers.iter().enumerate().skip(1) {
        let mut coeff: Scalar = field.one().try_div(&field.from_i64(k as i64))?;
        if k % 2 == 0 {
            coeff = coeff.neg();
        }
        acc = acc.add(&pk.scale(&coeff));
    }
    Ok(acc)
}
