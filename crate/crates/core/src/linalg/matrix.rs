use std::fmt;
use std::ops::{Index, IndexMut};

use super::LinalgError;
use crate::arith::{Field, Scalar};

/// The operations matrix entries need: a commutative ring that is also an
/// algebra over the scalar field.
///
/// Zeros and ones are produced from an existing element so that context
/// (the field, the number of polynomial variables) is carried along.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    /// The field of scalars acting on this element.
    fn field(&self) -> Field;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        Scalar::neg(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
    fn field(&self) -> Field {
        Scalar::field(self)
    }
}

/// A dense row-major matrix. Indexing is 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ScalarMatrix = Matrix<Scalar>;

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(LinalgError::Shape(format!("{} entries cannot form a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        Matrix { rows, cols, data: vec![proto.zero_like(); rows * cols] }
    }

    pub fn identity(d: usize, proto: &T) -> Self {
        let mut m = Self::zeros(d, d, proto);
        for k in 0..d {
            m[(k, k)] = proto.one_like();
        }
        m
    }

    /// The matrix with a single one at `(r, c)`.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize, proto: &T) -> Self {
        let mut m = Self::zeros(rows, cols, proto);
        m[(r, c)] = proto.one_like();
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    pub fn field(&self) -> Field {
        self.data[0].field()
    }

    /// A representative element; used to build zeros and ones of the right kind.
    pub fn proto(&self) -> &T {
        &self.data[0]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = &self[(r, c)];
                    if r == c {
                        *e == e.one_like()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self.data[0].zero_like();
        let mut data = vec![zero; self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut data[r * other.cols + c];
                    *slot = slot.plus(&a.times(b));
                }
            }
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    /// Panicking forms for internal code where shapes are known to agree.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix shapes agree")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("matrix shapes agree")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix shapes agree")
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::negate)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn pow(&self, k: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows, self.proto());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self, LinalgError> {
        if !self.is_square() || self.rows != other.rows || !other.is_square() {
            return Err(LinalgError::Shape("commutator needs equal square matrices".into()));
        }
        Ok(self.mul(other).sub(&other.mul(self)))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.commutator(other).map(|c| c.is_zero()).unwrap_or(false)
    }
}

impl ScalarMatrix {
    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn zeros_in(field: Field, rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols, &field.zero())
    }

    pub fn identity_in(field: Field, d: usize) -> Self {
        Self::identity(d, &field.zero())
    }

    pub fn unit_in(field: Field, d: usize, r: usize, c: usize) -> Self {
        Self::unit(d, d, r, c, &field.zero())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn products_and_commutators() {
        let a = ScalarMatrix::from_i64_rows(q(), &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = ScalarMatrix::from_i64_rows(q(), &[vec![0, 1], vec![1, 0]]).unwrap();
        let ab = ScalarMatrix::from_i64_rows(q(), &[vec![2, 1], vec![4, 3]]).unwrap();
        assert_eq!(a.mul(&b), ab);
        assert!(a.commutator(&a).unwrap().is_zero());
        assert!(!a.commutes_with(&b));
        assert!(a.pow(0).is_identity());
    }

    #[test]
    fn elementary_brackets() {
        let f = q();
        let e = |i: usize, j: usize| ScalarMatrix::unit_in(f, 4, i - 1, j - 1);
        assert_eq!(e(1, 2).commutator(&e(2, 3)).unwrap(), e(1, 3));
        assert!(e(1, 2).commutator(&e(3, 4)).unwrap().is_zero());
        let five = ScalarMatrix::identity_in(f, 3);
        assert!(e(1, 2).commutator(&five).is_err());
    }

    #[test]
    fn shape_errors() {
        let a = ScalarMatrix::zeros_in(q(), 2, 3);
        let b = ScalarMatrix::zeros_in(q(), 2, 3);
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_add(&b).is_ok());
        assert!(ScalarMatrix::new(2, 2, vec![q().one()]).is_err());
        assert!(ScalarMatrix::from_rows(vec![vec![q().one()], vec![]]).is_err());
    }
}
