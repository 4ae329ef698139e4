//! Gaussian elimination over an exact field.

use super::{LinalgError, ScalarMatrix};
use crate::arith::Scalar;

/// Reduced row echelon form and the pivot columns.
pub fn row_reduce(m: &ScalarMatrix) -> (ScalarMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                let tmp = a[(p, k)].clone();
                a[(p, k)] = a[(r, k)].clone();
                a[(r, k)] = tmp;
            }
        }
        let inv = a[(r, c)].inv().expect("pivot is nonzero");
        for k in 0..cols {
            a[(r, k)] = &a[(r, k)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for k in 0..cols {
                let delta = &factor * &a[(r, k)];
                a[(i, k)] = &a[(i, k)] - &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &ScalarMatrix) -> usize {
    row_reduce(m).1.len()
}

/// A basis of `{ v : m v = 0 }`.
pub fn nullspace(m: &ScalarMatrix) -> Vec<Vec<Scalar>> {
    let field = m.field();
    let (rref, pivots) = row_reduce(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); m.cols()];
            v[f] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rref[(row, f)].neg();
            }
            v
        })
        .collect()
}

pub fn inverse(m: &ScalarMatrix) -> Result<ScalarMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Shape("only square matrices are invertible".into()));
    }
    let d = m.rows();
    let field = m.field();
    let aug = ScalarMatrix::from_fn(d, 2 * d, |r, c| {
        if c < d {
            m[(r, c)].clone()
        } else if c - d == r {
            field.one()
        } else {
            field.zero()
        }
    });
    let (rref, pivots) = row_reduce(&aug);
    if pivots.len() < d || pivots[d - 1] >= d {
        return Err(LinalgError::Singular);
    }
    Ok(ScalarMatrix::from_fn(d, d, |r, c| rref[(r, c + d)].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    #[test]
    fn inverse_over_fp() {
        let f = Field::prime(7).unwrap();
        let m = ScalarMatrix::from_i64_rows(f, &[vec![2, 1], vec![5, 3]]).unwrap();
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = ScalarMatrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(inverse(&sing), Err(LinalgError::Singular)));
        assert_eq!(rank(&sing), 1);
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let f = Field::Rational;
        let m = ScalarMatrix::from_i64_rows(f, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in 0..2 {
                let s = (0..3).fold(f.zero(), |acc, c| &acc + &(&m[(r, c)] * &v[c]));
                assert!(s.is_zero());
            }
        }
    }
}
