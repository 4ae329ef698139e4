use std::collections::BTreeMap;
use std::fmt;

use super::{ExponentMatrix, Variable};
use crate::arith::{p_ary_digits, Field, Scalar};
use crate::linalg::{Matrix, Ring, ScalarMatrix};

/// An element of `k[x_ij : 1 <= i < j <= n]`, keyed by exponent matrix.
///
/// Zero coefficients are never stored, and iteration follows the
/// lexicographic order of the exponent matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    field: Field,
    terms: BTreeMap<ExponentMatrix, Scalar>,
}

pub type PolyMatrix = Matrix<Polynomial>;

impl Polynomial {
    pub fn zero(n: usize, field: Field) -> Self {
        Polynomial { n, field, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let field = c.field();
        Self::monomial(ExponentMatrix::zero(n), c).with_field(field)
    }

    pub fn one(n: usize, field: Field) -> Self {
        Self::constant(n, field.one())
    }

    pub fn variable(n: usize, field: Field, v: Variable) -> Self {
        Self::monomial(ExponentMatrix::elementary(n, v.i, v.j, 1), field.one())
    }

    pub fn monomial(m: ExponentMatrix, c: Scalar) -> Self {
        let mut p = Polynomial { n: m.size(), field: c.field(), terms: BTreeMap::new() };
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentMatrix, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ExponentMatrix) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Counit: the value at the identity element, i.e. the constant term.
    pub fn counit(&self) -> Scalar {
        self.coeff(&ExponentMatrix::zero(self.n))
    }

    /// Add `c * x^m` in place.
    pub fn add_term(&mut self, m: ExponentMatrix, c: &Scalar) {
        debug_assert_eq!(m.size(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.n, other.n, "polynomials over different U_n");
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n, self.field);
        }
        self.map_coeffs(|x| x * c)
    }

    fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.n, self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = Polynomial::zero(self.n, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), &(ca * cb));
            }
        }
        out
    }

    /// Power by repeated multiplication; in characteristic `p` the base-`p`
    /// digits are used together with `f^p = f^[p]` over the prime field.
    pub fn pow(&self, e: u64) -> Polynomial {
        match self.field {
            Field::Prime(p) => {
                let mut acc = Polynomial::one(self.n, self.field);
                let mut layer = self.clone();
                for (l, &digit) in p_ary_digits(e, p).digits().iter().enumerate() {
                    if l > 0 {
                        layer = layer.frobenius_substitute(p);
                    }
                    for _ in 0..digit {
                        acc = acc.mul(&layer);
                    }
                }
                acc
            }
            Field::Rational => {
                let mut acc = Polynomial::one(self.n, self.field);
                for _ in 0..e {
                    acc = acc.mul(self);
                }
                acc
            }
        }
    }

    /// Replace every variable `x_ij` by `x_ij^e`, leaving scalars alone.
    pub fn frobenius_substitute(&self, e: u64) -> Polynomial {
        assert!(e >= 1, "substitution exponent must be positive");
        let terms = self.terms.iter().map(|(m, c)| (m.scale(e), c.clone())).collect();
        Polynomial { n: self.n, field: self.field, terms }
    }

    /// Value at the point whose coordinates are listed in row-major order.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), super::variable_count(self.n));
        let mut total = self.field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.raw()) {
                if e > 0 {
                    v = &v * &x.pow(e);
                }
            }
            total = &total + &v;
        }
        total
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(ExponentMatrix::degree).max().unwrap_or(0)
    }
}

impl Ring for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.n, self.field)
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.n, self.field)
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
        Polynomial::scale(self, c)
    }
    fn field(&self) -> Field {
        self.field
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_zero() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Constant polynomial matrix with the given scalar entries.
pub fn constant_poly_matrix(n: usize, m: &ScalarMatrix) -> PolyMatrix {
    m.map(|c| Polynomial::constant(n, c.clone()))
}

/// Apply the `[e]` substitution to every entry.
pub fn frobenius_substitute_matrix(m: &PolyMatrix, e: u64) -> PolyMatrix {
    m.map(|p| p.frobenius_substitute(e))
}

pub fn evaluate_matrix(m: &PolyMatrix, point: &[Scalar]) -> ScalarMatrix {
    m.map(|p| p.evaluate(point))
}

/// The generic element `1 + sum_{i<j} x_ij e_ij` of `U_n`.
pub fn generic_element(n: usize, field: Field) -> PolyMatrix {
    let proto = Polynomial::zero(n, field);
    let mut g = PolyMatrix::identity(n, &proto);
    for v in Variable::all(n) {
        g[(v.i - 1, v.j - 1)] = Polynomial::variable(n, field, v);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, f: Field, i: usize, j: usize) -> Polynomial {
        Polynomial::variable(n, f, Variable { i, j })
    }

    #[test]
    fn counit_is_constant_term() {
        let f = Field::Rational;
        assert!(var(3, f, 1, 2).counit().is_zero());
        let p = Polynomial::constant(3, f.from_i64(3)).add(&var(3, f, 1, 2).mul(&var(3, f, 1, 3)));
        assert_eq!(p.counit(), f.from_i64(3));
        assert!(Polynomial::zero(3, f).counit().is_zero());
    }

    #[test]
    fn substitution_example() {
        // [[1, 2x + 3y], [0, 1]]^[3] = [[1, 2x^3 + 3y^3], [0, 1]], with x = x12, y = x13
        let f = Field::Rational;
        let n = 3;
        let (x, y) = (var(n, f, 1, 2), var(n, f, 1, 3));
        let one = Polynomial::one(n, f);
        let zero = Polynomial::zero(n, f);
        let entry = x.scale(&f.from_i64(2)).add(&y.scale(&f.from_i64(3)));
        let m = PolyMatrix::from_rows(vec![vec![one.clone(), entry], vec![zero.clone(), one.clone()]]).unwrap();
        let expected_entry = x.pow(3).scale(&f.from_i64(2)).add(&y.pow(3).scale(&f.from_i64(3)));
        let expected = PolyMatrix::from_rows(vec![vec![one.clone(), expected_entry], vec![zero, one]]).unwrap();
        assert_eq!(frobenius_substitute_matrix(&m, 3), expected);
    }

    #[test]
    fn substitution_on_monomials() {
        let f = Field::prime(5).unwrap();
        let (x12, x23) = (var(3, f, 1, 2), var(3, f, 2, 3));
        let p = x12.add(&x12.mul(&x23));
        let expected = x12.pow(5).add(&x12.pow(5).mul(&x23.pow(5)));
        assert_eq!(p.frobenius_substitute(5), expected);
        let c = Polynomial::constant(3, f.from_i64(4));
        assert_eq!(c.frobenius_substitute(25), c);
    }

    #[test]
    fn char_p_power_agrees_with_repeated_product() {
        let f = Field::prime(3).unwrap();
        let p = var(3, f, 1, 2).add(&var(3, f, 2, 3).scale(&f.from_i64(2))).add(&Polynomial::one(3, f));
        let mut acc = Polynomial::one(3, f);
        for e in 0..12 {
            assert_eq!(p.pow(e), acc, "exponent {e}");
            acc = acc.mul(&p);
        }
    }

    #[test]
    fn evaluation() {
        let f = Field::prime(7).unwrap();
        let p = var(3, f, 1, 2).mul(&var(3, f, 1, 3)).scale(&f.from_i64(2)).add(&Polynomial::one(3, f));
        let pt = vec![f.from_i64(3), f.from_i64(4), f.from_i64(5)];
        assert_eq!(p.evaluate(&pt), f.from_i64(1 + 2 * 3 * 4));
    }
}
