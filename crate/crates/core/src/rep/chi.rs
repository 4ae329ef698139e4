use std::collections::BTreeMap;

use super::RepError;
use crate::arith::Field;
use crate::hopf::{ExponentMatrix, PolyMatrix, Polynomial};
use crate::linalg::ScalarMatrix;

/// The coefficient matrices `χ(M)` of `(a_ij) = Σ_M χ(M) x^M`.
///
/// Only nonzero matrices are stored; `chi` returns zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiTable {
    n: usize,
    field: Field,
    d: usize,
    support: BTreeMap<ExponentMatrix, ScalarMatrix>,
}

impl ChiTable {
    pub fn new(n: usize, field: Field, d: usize) -> Self {
        assert!(n >= 2 && d >= 1);
        ChiTable { n, field, d, support: BTreeMap::new() }
    }

    /// The table `{0 -> I}` of the trivial representation.
    pub fn trivial(n: usize, field: Field, d: usize) -> Self {
        let mut t = ChiTable::new(n, field, d);
        t.support.insert(ExponentMatrix::zero(n), ScalarMatrix::identity_in(field, d));
        t
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// Set `χ(M)`; a zero matrix removes `M` from the support.
    pub fn insert(&mut self, m: ExponentMatrix, value: ScalarMatrix) -> Result<(), RepError> {
        if m.size() != self.n {
            return Err(RepError::Dimension(format!("exponent matrix of size {} in a table over U_{}", m.size(), self.n)));
        }
        if value.rows() != self.d || value.cols() != self.d {
            return Err(RepError::Dimension(format!(
                "{}x{} coefficient matrix in a {}-dimensional table",
                value.rows(),
                value.cols(),
                self.d
            )));
        }
        if value.field() != self.field {
            return Err(RepError::Dimension(format!("coefficients over {} in a table over {}", value.field(), self.field)));
        }
        if value.is_zero() {
            self.support.remove(&m);
        } else {
            self.support.insert(m, value);
        }
        Ok(())
    }

    pub fn get(&self, m: &ExponentMatrix) -> Option<&ScalarMatrix> {
        self.support.get(m)
    }

    pub fn chi(&self, m: &ExponentMatrix) -> ScalarMatrix {
        self.support.get(m).cloned().unwrap_or_else(|| ScalarMatrix::zeros_in(self.field, self.d, self.d))
    }

    /// `χ(r ε_ij)`.
    pub fn chi_single(&self, i: usize, j: usize, r: u64) -> ScalarMatrix {
        self.chi(&ExponentMatrix::elementary(self.n, i, j, r))
    }

    /// Supported exponent matrices in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&ExponentMatrix, &ScalarMatrix)> {
        self.support.iter()
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `Σ_M χ(M) x^M`.
    pub fn assemble(&self) -> PolyMatrix {
        let zero = Polynomial::zero(self.n, self.field);
        let mut out = PolyMatrix::zeros(self.d, self.d, &zero);
        for (m, c) in &self.support {
            for r in 0..self.d {
                for s in 0..self.d {
                    out[(r, s)].add_term(m.clone(), &c[(r, s)]);
                }
            }
        }
        out
    }

    /// Coefficient matrices of every monomial occurring in `m`.
    pub fn extract(m: &PolyMatrix) -> Result<ChiTable, RepError> {
        if !m.is_square() {
            return Err(RepError::Dimension("a representation matrix must be square".into()));
        }
        let proto = m.proto();
        let n = proto.ambient_size();
        let field = proto.field();
        let d = m.rows();
        let mut support: BTreeMap<ExponentMatrix, ScalarMatrix> = BTreeMap::new();
        for r in 0..d {
            for s in 0..d {
                let entry = &m[(r, s)];
                if entry.ambient_size() != n || entry.field() != field {
                    return Err(RepError::Dimension(format!("entry ({}, {}) lives in a different ring", r + 1, s + 1)));
                }
                for (mon, c) in entry.terms() {
                    let slot = support.entry(mon.clone()).or_insert_with(|| ScalarMatrix::zeros_in(field, d, d));
                    slot[(r, s)] = c.clone();
                }
            }
        }
        Ok(ChiTable { n, field, d, support })
    }
}

pub fn extract_chi(m: &PolyMatrix) -> Result<ChiTable, RepError> {
    ChiTable::extract(m)
}

pub fn assemble(chi: &ChiTable) -> PolyMatrix {
    chi.assemble()
}
