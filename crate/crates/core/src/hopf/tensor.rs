use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{ExponentMatrix, Polynomial};
use crate::arith::{p_ary_digits, Field, Scalar};
use crate::linalg::{Matrix, Ring};

/// An element of `A_n ⊗ A_n` in the basis `x^M ⊗ x^N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    n: usize,
    field: Field,
    terms: BTreeMap<(ExponentMatrix, ExponentMatrix), Scalar>,
}

/// A `d x d` grid of tensors, e.g. the matrix `(Δ(a_ij))`.
pub type TensorGrid = Matrix<TensorElement>;

impl TensorElement {
    pub fn zero(n: usize, field: Field) -> Self {
        TensorElement { n, field, terms: BTreeMap::new() }
    }

    /// `1 ⊗ 1`.
    pub fn one(n: usize, field: Field) -> Self {
        Self::basis(ExponentMatrix::zero(n), ExponentMatrix::zero(n), field.one())
    }

    /// `c · x^left ⊗ x^right`.
    pub fn basis(left: ExponentMatrix, right: ExponentMatrix, c: Scalar) -> Self {
        let mut t = TensorElement::zero(left.size(), c.field());
        t.add_term(left, right, &c);
        t
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &Polynomial, b: &Polynomial) -> Self {
        assert_eq!(a.field(), b.field());
        let mut t = TensorElement::zero(a.ambient_size(), a.field());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(ma.clone(), mb.clone(), &(ca * cb));
            }
        }
        t
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ExponentMatrix, ExponentMatrix), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &ExponentMatrix, right: &ExponentMatrix) -> Scalar {
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, left: ExponentMatrix, right: ExponentMatrix, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!((self.n, self.field), (other.n, other.field));
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.n, self.field);
        for ((l, r), x) in &self.terms {
            out.add_term(l.clone(), r.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        assert_eq!((self.n, self.field), (other.n, other.field));
        let mut out = TensorElement::zero(self.n, self.field);
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                out.add_term(la.add(lb), ra.add(rb), &(ca * cb));
            }
        }
        out
    }

    /// Power; in characteristic `p` uses `t^p = t^([p]⊗[p])`.
    pub fn pow(&self, e: u64) -> TensorElement {
        let mut acc = TensorElement::one(self.n, self.field);
        match self.field {
            Field::Prime(p) => {
                let mut layer = self.clone();
                for (l, &digit) in p_ary_digits(e, p).digits().iter().enumerate() {
                    if l > 0 {
                        layer = layer.frobenius_substitute(p);
                    }
                    for _ in 0..digit {
                        acc = acc.mul(&layer);
                    }
                }
            }
            Field::Rational => {
                for _ in 0..e {
                    acc = acc.mul(self);
                }
            }
        }
        acc
    }

    /// `[e] ⊗ [e]`.
    pub fn frobenius_substitute(&self, e: u64) -> TensorElement {
        let terms = self.terms.iter().map(|((l, r), c)| ((l.scale(e), r.scale(e)), c.clone())).collect();
        TensorElement { n: self.n, field: self.field, terms }
    }

    /// `(id ⊗ ε)`, identifying `A ⊗ k` with `A`.
    pub fn counit_right(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n, self.field);
        for ((l, r), c) in &self.terms {
            if r.is_zero() {
                out.add_term(l.clone(), c);
            }
        }
        out
    }

    /// `(ε ⊗ id)`.
    pub fn counit_left(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n, self.field);
        for ((l, r), c) in &self.terms {
            if l.is_zero() {
                out.add_term(r.clone(), c);
            }
        }
        out
    }
}

impl Ring for TensorElement {
    fn zero_like(&self) -> Self {
        TensorElement::zero(self.n, self.field)
    }
    fn one_like(&self) -> Self {
        TensorElement::one(self.n, self.field)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, c: &Scalar) -> Self {
        TensorElement::scale(self, c)
    }
    fn field(&self) -> Field {
        self.field
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((l, r), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{l}⊗{r}")?;
            } else {
                write!(f, "{c}*{l}⊗{r}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}
