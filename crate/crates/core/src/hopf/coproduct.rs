use std::collections::{BTreeMap, HashMap};

use super::{ExponentMatrix, PolyMatrix, Polynomial, TensorElement, TensorGrid, Variable};
use crate::arith::{Field, Scalar};

/// `Δ(x_ij) = 1⊗x_ij + Σ_{i<k<j} x_ik⊗x_kj + x_ij⊗1`.
pub fn generator_coproduct(n: usize, field: Field, v: Variable) -> TensorElement {
    let one = field.one();
    let zero = ExponentMatrix::zero(n);
    let x = |a: usize, b: usize| ExponentMatrix::elementary(n, a, b, 1);
    let mut t = TensorElement::basis(zero.clone(), x(v.i, v.j), one.clone());
    for k in v.i + 1..v.j {
        t.add_term(x(v.i, k), x(k, v.j), &one);
    }
    t.add_term(x(v.i, v.j), zero, &one);
    t
}

/// Memoizes `Δ(x_ij^e)` and `Δ(x^M)` across many polynomials over the
/// same `A_n`.
#[derive(Debug, Clone)]
pub struct CoproductCache {
    n: usize,
    field: Field,
    powers: HashMap<(Variable, u64), TensorElement>,
    monomials: HashMap<ExponentMatrix, TensorElement>,
}

impl CoproductCache {
    pub fn new(n: usize, field: Field) -> Self {
        CoproductCache { n, field, powers: HashMap::new(), monomials: HashMap::new() }
    }

    fn generator_power(&mut self, v: Variable, e: u64) -> &TensorElement {
        let (n, field) = (self.n, self.field);
        self.powers.entry((v, e)).or_insert_with(|| generator_coproduct(n, field, v).pow(e))
    }

    /// `Δ(x^M) = Π Δ(x_ij)^{m_ij}`.
    pub fn monomial(&mut self, m: &ExponentMatrix) -> TensorElement {
        if let Some(t) = self.monomials.get(m) {
            return t.clone();
        }
        let mut acc = TensorElement::one(self.n, self.field);
        for (v, e) in m.iter() {
            if e > 0 {
                acc = acc.mul(self.generator_power(v, e));
            }
        }
        self.monomials.insert(m.clone(), acc.clone());
        acc
    }

    pub fn apply(&mut self, poly: &Polynomial) -> TensorElement {
        assert_eq!((poly.ambient_size(), poly.field()), (self.n, self.field));
        let mut out = TensorElement::zero(self.n, self.field);
        for (m, c) in poly.terms() {
            for ((l, r), x) in self.monomial(m).terms() {
                out.add_term(l.clone(), r.clone(), &(x * c));
            }
        }
        out
    }

    /// Entrywise `Δ(a_ij)`.
    pub fn apply_matrix(&mut self, a: &PolyMatrix) -> TensorGrid {
        a.map(|p| self.apply(p))
    }
}

pub fn coproduct(poly: &Polynomial) -> TensorElement {
    CoproductCache::new(poly.ambient_size(), poly.field()).apply(poly)
}

/// The grid `(Σ_k a_ik ⊗ a_kj)_{ij}`.
pub fn matrix_product_tensor_side(a: &PolyMatrix) -> TensorGrid {
    assert!(a.is_square());
    let d = a.rows();
    let proto = a.proto();
    let zero = TensorElement::zero(proto.ambient_size(), proto.field());
    TensorGrid::from_fn(d, d, |i, j| {
        let mut acc = zero.clone();
        for k in 0..d {
            let (left, right) = (&a[(i, k)], &a[(k, j)]);
            if left.is_zero() || right.is_zero() {
                continue;
            }
            acc = acc.add(&TensorElement::tensor(left, right));
        }
        acc
    })
}

/// Elements of `A ⊗ A ⊗ A`, used only to compare the two sides of
/// coassociativity.
pub type TripleTensor = BTreeMap<(ExponentMatrix, ExponentMatrix, ExponentMatrix), Scalar>;

fn accumulate(out: &mut TripleTensor, key: (ExponentMatrix, ExponentMatrix, ExponentMatrix), c: Scalar) {
    let s = match out.remove(&key) {
        Some(prev) => &prev + &c,
        None => c,
    };
    if !s.is_zero() {
        out.insert(key, s);
    }
}

/// `((Δ⊗id)(t), (id⊗Δ)(t))`.
pub fn coassociativity_sides(t: &TensorElement) -> (TripleTensor, TripleTensor) {
    let mut cache = CoproductCache::new(t.ambient_size(), t.field());
    let (mut left, mut right) = (TripleTensor::new(), TripleTensor::new());
    for ((l, r), c) in t.terms() {
        for ((a, b), x) in cache.monomial(l).terms() {
            accumulate(&mut left, (a.clone(), b.clone(), r.clone()), x * c);
        }
        for ((a, b), x) in cache.monomial(r).terms() {
            accumulate(&mut right, (l.clone(), a.clone(), b.clone()), x * c);
        }
    }
    (left, right)
}
