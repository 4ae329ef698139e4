//! Splittings `S_1 + ... + S_n = M` of exponent matrices: the closed form
//! of the coproduct of a coefficient table, the `L_ij` / `R_ij`
//! exponent expressions, and the unique-solution lemma with its
//! exhaustive oracle.

mod occurrence;

pub use occurrence::occurrence_report;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::arith::matrix_multinomial;
use crate::hopf::{ExponentMatrix, TensorElement, TensorGrid, Variable};
use crate::rep::ChiTable;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("({i}, {j}) is not a coordinate of U_{n}")]
    Index { i: usize, j: usize, n: usize },
    #[error("no variable s_{i}{j}^{k}: the layer index must lie in 1..={max}", max = j - i + 1)]
    Layer { i: usize, j: usize, k: usize },
    #[error("shape error: {0}")]
    Shape(String),
}

/// The variable `s_ij^k`, the part of `m_ij` assigned to the `k`-th term
/// of `Δ(x_ij)`: `k = 1` is `1 ⊗ x_ij`, `k = j-i+1` is `x_ij ⊗ 1`, and
/// otherwise the term is `x_{i,i+k-1} ⊗ x_{i+k-1,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitVarId {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl SplitVarId {
    pub fn new(i: usize, j: usize, k: usize, n: usize) -> Result<Self, SplitError> {
        if i < 1 || i >= j || j > n {
            return Err(SplitError::Index { i, j, n });
        }
        if k < 1 || k > j - i + 1 {
            return Err(SplitError::Layer { i, j, k });
        }
        Ok(SplitVarId { i, j, k })
    }

    /// All variables for `U_n`, in lexicographic `(i, j, k)` order.
    pub fn all(n: usize) -> impl Iterator<Item = SplitVarId> {
        Variable::all(n).flat_map(|v| (1..=v.j - v.i + 1).map(move |k| SplitVarId { i: v.i, j: v.j, k }))
    }
}

impl fmt::Display for SplitVarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}{}^{}", self.i, self.j, self.k)
    }
}

/// A sum of distinct split variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExpr {
    pub summands: Vec<SplitVarId>,
}

impl LinearExpr {
    pub fn evaluate(&self, s: &Splitting) -> u64 {
        self.summands.iter().map(|v| s.get(*v)).sum()
    }

    pub fn contains(&self, v: SplitVarId) -> bool {
        self.summands.contains(&v)
    }
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<(), SplitError> {
    if i < 1 || i >= j || j > n {
        return Err(SplitError::Index { i, j, n });
    }
    Ok(())
}

/// `L_ij = Σ_{k=j}^{n} s_ik^{j-i+1}`: the left exponent of `x_ij`.
pub fn l_expression(i: usize, j: usize, n: usize) -> Result<LinearExpr, SplitError> {
    check_pair(i, j, n)?;
    Ok(LinearExpr { summands: (j..=n).map(|k| SplitVarId { i, j: k, k: j - i + 1 }).collect() })
}

/// `R_ij = Σ_{k=1}^{i} s_kj^{i-k+1}`: the right exponent of `x_ij`.
pub fn r_expression(i: usize, j: usize, n: usize) -> Result<LinearExpr, SplitError> {
    check_pair(i, j, n)?;
    Ok(LinearExpr { summands: (1..=i).map(|k| SplitVarId { i: k, j, k: i - k + 1 }).collect() })
}

/// The variable shared by `L_ij` and `R_uv`: `s_iv^{j-i+1}` when `j = u`.
pub fn shared_variable(l: (usize, usize), r: (usize, usize), n: usize) -> Result<Option<SplitVarId>, SplitError> {
    check_pair(l.0, l.1, n)?;
    check_pair(r.0, r.1, n)?;
    let ((i, j), (u, v)) = (l, r);
    Ok((j == u).then_some(SplitVarId { i, j: v, k: j - i + 1 }))
}

/// An assignment of non-negative integers to the split variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Splitting {
    n: usize,
    /// Nonzero values only.
    values: BTreeMap<SplitVarId, u64>,
}

impl Splitting {
    pub fn zero(n: usize) -> Self {
        Splitting { n, values: BTreeMap::new() }
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: SplitVarId) -> u64 {
        self.values.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: SplitVarId, value: u64) -> Result<(), SplitError> {
        SplitVarId::new(v.i, v.j, v.k, self.n)?;
        if value == 0 {
            self.values.remove(&v);
        } else {
            self.values.insert(v, value);
        }
        Ok(())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (SplitVarId, u64)> + '_ {
        self.values.iter().map(|(v, e)| (*v, *e))
    }

    /// `S_k`, the matrix of the `s_ij^k`.
    pub fn layer_matrix(&self, k: usize) -> ExponentMatrix {
        let mut m = ExponentMatrix::zero(self.n);
        for (v, e) in self.nonzero().filter(|(v, _)| v.k == k) {
            m.set(v.i, v.j, e);
        }
        m
    }

    /// `S_1 + ... + S_n`.
    pub fn sum_matrix(&self) -> ExponentMatrix {
        let mut m = ExponentMatrix::zero(self.n);
        for (v, e) in self.nonzero() {
            m.set(v.i, v.j, m.get(v.i, v.j) + e);
        }
        m
    }

    /// `(L_ij)` as an exponent matrix.
    pub fn left_exponents(&self) -> ExponentMatrix {
        let mut m = ExponentMatrix::zero(self.n);
        for v in Variable::all(self.n) {
            m.set(v.i, v.j, l_expression(v.i, v.j, self.n).expect("valid pair").evaluate(self));
        }
        m
    }

    /// `(R_ij)` as an exponent matrix.
    pub fn right_exponents(&self) -> ExponentMatrix {
        let mut m = ExponentMatrix::zero(self.n);
        for v in Variable::all(self.n) {
            m.set(v.i, v.j, r_expression(v.i, v.j, self.n).expect("valid pair").evaluate(self));
        }
        m
    }
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        for (k, (v, e)) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}={e}")?;
        }
        Ok(())
    }
}

/// Ordered compositions of `total` into `parts` non-negative summands, in
/// lexicographic order.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn go(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    assert!(parts >= 1);
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Every splitting of `M`, each once, lexicographic in `(i, j, k)`.
pub fn enumerate_splittings(m: &ExponentMatrix) -> Vec<Splitting> {
    let n = m.size();
    let mut out = vec![Splitting::zero(n)];
    for v in Variable::all(n) {
        let comps = compositions(m.get(v.i, v.j), v.j - v.i + 1);
        let mut next = Vec::with_capacity(out.len() * comps.len());
        for s in &out {
            for c in &comps {
                let mut t = s.clone();
                for (k, &e) in c.iter().enumerate() {
                    if e > 0 {
                        t.values.insert(SplitVarId { i: v.i, j: v.j, k: k + 1 }, e);
                    }
                }
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// The grid `(Δ(a_ij))` from the closed formula
/// `Σ_M χ(M) Σ_{S_1+...+S_n=M} (M; S_1,...,S_n) x^L ⊗ x^R`.
pub fn split_coproduct(chi: &ChiTable) -> TensorGrid {
    let (n, field, d) = (chi.ambient_size(), chi.field(), chi.dimension());
    let zero = TensorElement::zero(n, field);
    let mut grid = TensorGrid::zeros(d, d, &zero);
    for (m, c) in chi.iter() {
        for s in enumerate_splittings(m) {
            let parts: Vec<ExponentMatrix> = (1..=n).map(|k| s.layer_matrix(k)).collect();
            let weight = matrix_multinomial(m, &parts).expect("parts sum to M");
            let w = field.from_biguint(&weight);
            if w.is_zero() {
                continue;
            }
            let (left, right) = (s.left_exponents(), s.right_exponents());
            for a in 0..d {
                for b in 0..d {
                    let coeff = &c[(a, b)] * &w;
                    grid[(a, b)].add_term(left.clone(), right.clone(), &coeff);
                }
            }
        }
    }
    grid
}

fn check_yz(y: &ExponentMatrix, z: &ExponentMatrix) -> Result<usize, SplitError> {
    let n = y.size();
    if z.size() != n {
        return Err(SplitError::Shape("Y and Z have different sizes".into()));
    }
    Ok(n)
}

/// The unique splitting with `x^L ⊗ x^R = x^Y ⊗ x^Z` when `Y` has a zero
/// top row and `Z` lives in the top row: `s_1j^1 = z_1j`,
/// `s_ij^{j-i+1} = y_ij` for `i >= 2`, all else zero.
pub fn solve_yz(y: &ExponentMatrix, z: &ExponentMatrix) -> Result<Splitting, SplitError> {
    let n = check_yz(y, z)?;
    for v in Variable::all(n) {
        if v.i == 1 && y.get(v.i, v.j) != 0 {
            return Err(SplitError::Shape(format!("Y has a nonzero top-row entry at ({}, {})", v.i, v.j)));
        }
        if v.i != 1 && z.get(v.i, v.j) != 0 {
            return Err(SplitError::Shape(format!("Z has a nonzero entry off the top row at ({}, {})", v.i, v.j)));
        }
    }
    let mut s = Splitting::zero(n);
    for v in Variable::all(n) {
        if v.i == 1 {
            s.set(SplitVarId { i: 1, j: v.j, k: 1 }, z.get(1, v.j))?;
        } else {
            s.set(SplitVarId { i: v.i, j: v.j, k: v.j - v.i + 1 }, y.get(v.i, v.j))?;
        }
    }
    Ok(s)
}

/// Every splitting with values at most `bound` whose exponents are
/// `L = Y` and `R = Z`, by exhaustive search (with pruning on partial sums).
pub fn brute_solve_yz(y: &ExponentMatrix, z: &ExponentMatrix, bound: u64) -> Result<Vec<Splitting>, SplitError> {
    let n = check_yz(y, z)?;
    let vars: Vec<SplitVarId> = SplitVarId::all(n).collect();
    // constraint c: (expression, target); for each variable, the constraints it feeds
    let mut constraints: Vec<(Vec<usize>, u64)> = Vec::new();
    let position = |v: SplitVarId| vars.iter().position(|&w| w == v).expect("known variable");
    for v in Variable::all(n) {
        let l = l_expression(v.i, v.j, n)?;
        constraints.push((l.summands.iter().map(|&s| position(s)).collect(), y.get(v.i, v.j)));
        let r = r_expression(v.i, v.j, n)?;
        constraints.push((r.summands.iter().map(|&s| position(s)).collect(), z.get(v.i, v.j)));
    }
    let mut feeds: Vec<Vec<usize>> = vec![Vec::new(); vars.len()];
    let mut last: Vec<usize> = vec![0; constraints.len()];
    for (c, (members, _)) in constraints.iter().enumerate() {
        for &m in members {
            feeds[m].push(c);
        }
        last[c] = *members.iter().max().expect("non-empty expression");
    }
    let mut search = Search { vars: &vars, constraints: &constraints, feeds: &feeds, last: &last, bound, sums: vec![0; constraints.len()], assignment: vec![0; vars.len()], out: Vec::new(), n };
    search.run(0);
    Ok(search.out)
}

struct Search<'a> {
    vars: &'a [SplitVarId],
    constraints: &'a [(Vec<usize>, u64)],
    feeds: &'a [Vec<usize>],
    last: &'a [usize],
    bound: u64,
    sums: Vec<u64>,
    assignment: Vec<u64>,
    out: Vec<Splitting>,
    n: usize,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        if pos == self.vars.len() {
            let mut s = Splitting::zero(self.n);
            for (v, &e) in self.vars.iter().zip(&self.assignment) {
                if e > 0 {
                    s.values.insert(*v, e);
                }
            }
            self.out.push(s);
            return;
        }
        for value in 0..=self.bound {
            let feasible = self.feeds[pos].iter().all(|&c| {
                let total = self.sums[c] + value;
                let target = self.constraints[c].1;
                if self.last[c] == pos {
                    total == target
                } else {
                    total <= target
                }
            });
            if !feasible {
                // sums only grow with `value`, but a completed constraint may
                // still be satisfiable at a larger value
                continue;
            }
            for &c in &self.feeds[pos] {
                self.sums[c] += value;
            }
            self.assignment[pos] = value;
            self.run(pos + 1);
            for &c in &self.feeds[pos] {
                self.sums[c] -= value;
            }
        }
        self.assignment[pos] = 0;
    }
}
