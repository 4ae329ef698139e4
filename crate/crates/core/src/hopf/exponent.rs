use std::fmt;

use super::HopfError;

/// A coordinate `x_ij` of `U_n`, with `1 <= i < j <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub i: usize,
    pub j: usize,
}

impl Variable {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self, HopfError> {
        if i < 1 || i >= j || j > n {
            return Err(HopfError::Index { i, j, n });
        }
        Ok(Variable { i, j })
    }

    /// All coordinates of `U_n` in row-major order `(1,2), (1,3), ..., (n-1,n)`.
    pub fn all(n: usize) -> impl Iterator<Item = Variable> {
        (1..n).flat_map(move |i| (i + 1..=n).map(move |j| Variable { i, j }))
    }

    /// Position of this coordinate in the row-major order.
    pub fn index(&self, n: usize) -> usize {
        pair_index(n, self.i, self.j)
    }

    /// Bracket of basis elements of the Lie algebra of strictly upper
    /// triangular matrices: `[e_rs, e_tu] = e_ru` if `s = t`, `-e_ts` if
    /// `r = u`, zero otherwise.
    pub fn bracket(self, other: Variable) -> Option<(i64, Variable)> {
        if self.j == other.i {
            Some((1, Variable { i: self.i, j: other.j }))
        } else if self.i == other.j {
            Some((-1, Variable { i: other.i, j: self.j }))
        } else {
            None
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 {
            write!(f, "x{}{}", self.i, self.j)
        } else {
            write!(f, "x{}_{}", self.i, self.j)
        }
    }
}

pub fn variable_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major index of `(i, j)` among the strictly upper triangular slots.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // rows 1..i-1 contribute (n-1) + (n-2) + ... + (n-i+1) slots
    let before = (i - 1) * n - (i - 1) * i / 2;
    before + (j - i - 1)
}

/// An `n x n` strictly upper triangular matrix of non-negative exponents.
///
/// Only the slots above the diagonal are stored, row-major, so the derived
/// ordering is the lexicographic order of the matrix read row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl ExponentMatrix {
    pub fn zero(n: usize) -> Self {
        ExponentMatrix { n, entries: vec![0; variable_count(n)] }
    }

    /// `r * e_ij`.
    pub fn elementary(n: usize, i: usize, j: usize, r: u64) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, r);
        m
    }

    pub fn from_raw(n: usize, entries: Vec<u64>) -> Result<Self, HopfError> {
        if entries.len() != variable_count(n) {
            return Err(HopfError::Shape(format!(
                "expected {} upper-triangular entries for n = {n}, got {}",
                variable_count(n),
                entries.len()
            )));
        }
        Ok(ExponentMatrix { n, entries })
    }

    /// From full rows; everything on or below the diagonal must be zero.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self, HopfError> {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(HopfError::Shape(format!("row {} has length {}, expected {n}", r + 1, row.len())));
            }
            for (c, &v) in row.iter().enumerate() {
                if c <= r {
                    if v != 0 {
                        return Err(HopfError::Shape(format!(
                            "entry ({}, {}) is on or below the diagonal but nonzero",
                            r + 1,
                            c + 1
                        )));
                    }
                } else {
                    m.set(r + 1, c + 1, v);
                }
            }
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![0; self.n]; self.n];
        for (v, e) in self.iter() {
            rows[v.i - 1][v.j - 1] = e;
        }
        rows
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn raw(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[pair_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        let idx = pair_index(self.n, i, j);
        self.entries[idx] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// `(variable, exponent)` pairs in row-major order, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (Variable, u64)> + '_ {
        Variable::all(self.n).zip(self.entries.iter().copied())
    }

    /// If this is `r * e_ij` with `r > 0`, return `((i, j), r)`.
    pub fn as_single_entry(&self) -> Option<(Variable, u64)> {
        let mut found = None;
        for (v, e) in self.iter() {
            if e != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((v, e));
            }
        }
        found
    }

    pub fn add(&self, other: &ExponentMatrix) -> ExponentMatrix {
        assert_eq!(self.n, other.n, "exponent matrices of different sizes");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        ExponentMatrix { n: self.n, entries }
    }

    /// Entrywise multiplication by `e` (the monomial `x^M` becomes `x^{eM}`).
    pub fn scale(&self, e: u64) -> ExponentMatrix {
        ExponentMatrix { n: self.n, entries: self.entries.iter().map(|a| a * e).collect() }
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.iter().filter(|(_, e)| *e > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_row_major() {
        let n = 5;
        for (k, v) in Variable::all(n).enumerate() {
            assert_eq!(v.index(n), k);
        }
        assert_eq!(Variable::all(4).count(), 6);
    }

    #[test]
    fn rows_round_trip_and_validate() {
        let rows = vec![vec![0, 2, 3], vec![0, 0, 1], vec![0, 0, 0]];
        let m = ExponentMatrix::from_rows(&rows).unwrap();
        assert_eq!(m.to_rows(), rows);
        assert_eq!(m.get(1, 3), 3);
        assert_eq!(m.to_string(), "x12^2*x13^3*x23");
        assert!(ExponentMatrix::from_rows(&[vec![1, 0], vec![0, 0]]).is_err());
        assert!(ExponentMatrix::from_rows(&[vec![0, 0], vec![0]]).is_err());
    }

    #[test]
    fn basis_brackets() {
        let v = |i, j| Variable { i, j };
        assert_eq!(v(1, 2).bracket(v(2, 3)), Some((1, v(1, 3))));
        assert_eq!(v(2, 3).bracket(v(1, 2)), Some((-1, v(1, 3))));
        assert_eq!(v(1, 2).bracket(v(3, 4)), None);
        assert_eq!(v(1, 2).bracket(v(1, 3)), None);
    }

    #[test]
    fn variable_bounds() {
        assert!(Variable::new(2, 2, 3).is_err());
        assert!(Variable::new(0, 2, 3).is_err());
        assert!(Variable::new(1, 4, 3).is_err());
        assert!(Variable::new(1, 3, 3).is_ok());
    }
}
