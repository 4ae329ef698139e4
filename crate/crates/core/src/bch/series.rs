use num::{BigInt, BigRational, BigUint, Integer, One, Zero};

use super::{BchError, FreeElement, FreeWord, Gen};
use crate::arith::{denominator_divisible, factorial, Field};
use crate::linalg::ScalarMatrix;

/// `log(e^x e^y)` truncated at total degree `max_degree`, by direct
/// enumeration of the tuples `(p_1, q_1, ..., p_k, q_k)` with
/// `p_i + q_i > 0`: each contributes
/// `(-1)^{k-1}/k · 1/(p_1! q_1! ... p_k! q_k!) · x^{p_1} y^{q_1} ... x^{p_k} y^{q_k}`.
pub fn log_product_series(max_degree: usize) -> FreeElement {
    let mut out = FreeElement::zero();
    let mut word = Vec::new();
    enumerate_blocks(max_degree, 0, &mut word, &BigUint::one(), &mut out);
    out
}

fn enumerate_blocks(max_degree: usize, k: usize, word: &mut Vec<Gen>, denom: &BigUint, out: &mut FreeElement) {
    let room = max_degree - word.len();
    for size in 1..=room {
        for p in 0..=size {
            let q = size - p;
            let start = word.len();
            word.extend(std::iter::repeat(Gen::X).take(p));
            word.extend(std::iter::repeat(Gen::Y).take(q));
            let d = denom * factorial(p as u64) * factorial(q as u64);
            let blocks = k + 1;
            let sign: BigInt = if blocks % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            let c = BigRational::new(sign, BigInt::from(d.clone() * BigUint::from(blocks)));
            out.add_term(FreeWord(word.clone()), &c);
            enumerate_blocks(max_degree, blocks, word, &d, out);
            word.truncate(start);
        }
    }
}

/// The degree-`m` slice.
pub fn homogeneous_component(e: &FreeElement, m: usize) -> FreeElement {
    let mut out = FreeElement::zero();
    for (w, c) in e.terms().filter(|(w, _)| w.len() == m) {
        out.add_term(w.clone(), c);
    }
    out
}

/// The homogeneous components `P_1, ..., P_max_degree`.
pub fn bch_components(max_degree: usize) -> Vec<FreeElement> {
    let series = log_product_series(max_degree);
    (1..=max_degree).map(|m| homogeneous_component(&series, m)).collect()
}

/// True iff no reduced coefficient denominator is divisible by `p`.
pub fn denominator_audit(e: &FreeElement, p: u64) -> bool {
    e.terms().all(|(_, c)| !denominator_divisible(c, p))
}

/// Substitute `X` for `x` and `Y` for `y` in every component and sum.
///
/// In characteristic `p` each component must pass the denominator audit
/// first; otherwise a coefficient would not exist in the matrix field.
pub fn bch_evaluate(components: &[FreeElement], x: &ScalarMatrix, y: &ScalarMatrix) -> Result<ScalarMatrix, BchError> {
    if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
        return Err(BchError::Shape("X and Y must be square of equal size".into()));
    }
    let field = x.field();
    if field != y.field() {
        return Err(BchError::Shape(format!("X is over {field}, Y over {}", y.field())));
    }
    if let Field::Prime(p) = field {
        if let Some((k, _)) = components.iter().enumerate().find(|(_, e)| !denominator_audit(e, p)) {
            return Err(BchError::Denominator { component: k + 1, p });
        }
    }
    let d = x.rows();
    let mut acc = ScalarMatrix::zeros_in(field, d, d);
    for e in components {
        for (w, c) in e.terms() {
            let coeff = field.from_rational(c)?;
            let mut m = ScalarMatrix::identity_in(field, d);
            for g in w.letters() {
                m = m.mul(match g {
                    Gen::X => x,
                    Gen::Y => y,
                });
                if m.is_zero() {
                    break;
                }
            }
            if !m.is_zero() {
                acc = acc.add(&m.scale(&coeff));
            }
        }
    }
    Ok(acc)
}

/// Least common multiple of all coefficient denominators.
pub fn denominator_lcm(e: &FreeElement) -> BigInt {
    e.terms().fold(BigInt::one(), |acc, (_, c)| if c.is_zero() { acc } else { acc.lcm(c.denom()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bch::dynkin_projection;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn first_components() {
        let p = bch_components(3);
        assert_eq!(p[0], FreeElement::from_terms([("x", 1, 1), ("y", 1, 1)]).unwrap());
        assert_eq!(p[1], FreeElement::from_terms([("xy", 1, 2), ("yx", -1, 2)]).unwrap());
        let p3 = FreeElement::from_terms([
            ("x^2y", 1, 12),
            ("xyx", -1, 6),
            ("xy^2", 1, 12),
            ("y^2x", 1, 12),
            ("yx^2", 1, 12),
            ("yxy", -1, 6),
        ])
        .unwrap();
        assert_eq!(p[2], p3);
    }

    #[test]
    fn slicing() {
        let e = FreeElement::from_terms([("x", 1, 1), ("y", 1, 1)]).unwrap();
        assert_eq!(homogeneous_component(&e, 1), e);
        assert!(homogeneous_component(&e, 2).is_zero());
    }

    #[test]
    fn audits() {
        let p = bch_components(3);
        assert!(denominator_audit(&p[1], 5));
        assert!(!denominator_audit(&p[2], 3));
        assert_eq!(denominator_lcm(&p[2]), BigInt::from(12));
    }

    #[test]
    fn projection_fixes_p2() {
        let p2 = &bch_components(2)[1];
        assert_eq!(&dynkin_projection(p2).unwrap(), p2);
        assert_eq!(p2.coeff(&FreeWord(vec![Gen::X, Gen::Y])), q(1, 2));
    }

    #[test]
    fn evaluate_commuting() {
        let f = Field::prime(7).unwrap();
        let x = ScalarMatrix::unit_in(f, 3, 0, 2);
        let y = x.scale(&f.from_i64(3));
        let comps = bch_components(2);
        assert_eq!(bch_evaluate(&comps, &x, &y).unwrap(), x.add(&y));
    }

    #[test]
    fn evaluate_rejects_bad_denominators() {
        let f = Field::prime(3).unwrap();
        let x = ScalarMatrix::unit_in(f, 3, 0, 1);
        let y = ScalarMatrix::unit_in(f, 3, 1, 2);
        assert!(matches!(bch_evaluate(&bch_components(3), &x, &y), Err(BchError::Denominator { component: 3, p: 3 })));
    }
}
