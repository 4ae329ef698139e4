use num::{BigRational, One, Zero};
use proptest::prelude::*;

use unirep::arith::Field;
use unirep::bch::{
    bch_components, bch_evaluate, bracket_normalize, denominator_audit, dynkin_projection, homogeneous_component,
    left_nested_expand, log_product_series, BchError, BracketTree, FreeElement, FreeWord, Gen,
};
use unirep::linalg::{exp_nilpotent, log_unipotent, CharBound, ScalarMatrix};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn truncated_exp(g: Gen, degree: usize) -> FreeElement {
    let x = FreeElement::generator(g);
    let mut term = FreeElement::unit();
    let mut acc = FreeElement::unit();
    for k in 1..=degree {
        term = term.mul(&x).scale(&q(1, k as i64));
        acc = acc.add(&term);
    }
    acc
}

/// `log(e^x e^y)` from the two power series, truncated at `degree`.
fn series_oracle(degree: usize) -> FreeElement {
    let u = truncated_exp(Gen::X, degree).mul(&truncated_exp(Gen::Y, degree)).truncate(degree).sub(&FreeElement::unit());
    let mut power = FreeElement::unit();
    let mut acc = FreeElement::zero();
    for k in 1..=degree {
        power = power.mul(&u).truncate(degree);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(&q(sign, k as i64)));
    }
    acc
}

#[test]
fn enumeration_matches_the_series_oracle() {
    for degree in 1..=6 {
        assert_eq!(log_product_series(degree), series_oracle(degree), "degree {degree}");
    }
}

#[test]
fn dynkin_fixes_every_component() {
    for (m, pm) in bch_components(7).iter().enumerate() {
        assert_eq!(&dynkin_projection(pm).unwrap(), pm, "P_{}", m + 1);
    }
}

#[test]
fn components_are_homogeneous() {
    let series = log_product_series(5);
    let sum = (1..=5).fold(FreeElement::zero(), |acc, m| acc.add(&homogeneous_component(&series, m)));
    assert_eq!(sum, series);
    for (m, pm) in bch_components(5).iter().enumerate() {
        assert!(pm.terms().all(|(w, _)| w.len() == m + 1));
    }
}

#[test]
fn denominators_appear_at_the_characteristic() {
    let comps = bch_components(3);
    assert!(!denominator_audit(&comps[1], 2));
    assert!(!denominator_audit(&comps[2], 3));
    assert!(denominator_audit(&comps[2], 5));
    let f = Field::prime(3).unwrap();
    let z = ScalarMatrix::zeros_in(f, 3, 3);
    assert_eq!(bch_evaluate(&comps, &z, &z), Err(BchError::Denominator { component: 3, p: 3 }));
}

#[test]
fn dynkin_rejects_the_empty_word() {
    assert_eq!(dynkin_projection(&FreeElement::unit()), Err(BchError::DegreeZero));
}

fn gen() -> impl Strategy<Value = Gen> {
    prop_oneof![Just(Gen::X), Just(Gen::Y)]
}

fn element() -> impl Strategy<Value = FreeElement> {
    prop::collection::vec((prop::collection::vec(gen(), 1..=5), -4i64..=4, 1i64..=4), 0..=5).prop_map(|terms| {
        let mut e = FreeElement::zero();
        for (w, a, b) in terms {
            e.add_term(FreeWord(w), &q(a, b));
        }
        e
    })
}

fn tree() -> impl Strategy<Value = BracketTree> {
    gen().prop_map(BracketTree::leaf).prop_recursive(4, 8, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| BracketTree::node(a, b)))
}

fn strictly_upper(field: Field, n: usize) -> impl Strategy<Value = ScalarMatrix> {
    let p = field.characteristic().max(7) as i64;
    prop::collection::vec(0..p, n * n).prop_map(move |raw| {
        ScalarMatrix::from_fn(n, n, |r, c| if c > r { field.from_i64(raw[r * n + c] - 3) } else { field.zero() })
    })
}

fn bch_matches_matrices(field: Field, components: usize, x: &ScalarMatrix, y: &ScalarMatrix) -> Result<(), TestCaseError> {
    let bound = CharBound::from_characteristic(field.characteristic());
    let g = exp_nilpotent(x, bound).unwrap().mul(&exp_nilpotent(y, bound).unwrap());
    let lhs = bch_evaluate(&bch_components(components), x, y).unwrap();
    prop_assert_eq!(lhs, log_unipotent(&g, bound).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dynkin_is_idempotent(e in element()) {
        let once = dynkin_projection(&e).unwrap();
        prop_assert_eq!(dynkin_projection(&once).unwrap(), once);
    }

    #[test]
    fn normalized_brackets_expand_to_the_tree(t in tree(), a in -5i64..=5) {
        let c = q(a, 1);
        let sum = bracket_normalize(&t, &c)
            .into_iter()
            .fold(FreeElement::zero(), |acc, (letters, k)| acc.add(&left_nested_expand(&letters, &k)));
        prop_assert_eq!(sum, t.expand().scale(&c));
        prop_assert!(bracket_normalize(&t, &BigRational::one()).iter().all(|(s, k)| s.len() == t.len() && (k.is_one() || (-k).is_one())));
    }

    #[test]
    fn bracket_is_antisymmetric(a in element(), b in element()) {
        prop_assert_eq!(a.bracket(&b), b.bracket(&a).scale(&q(-1, 1)));
        prop_assert!(a.bracket(&a).terms().all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn bch_in_characteristic_five(x in strictly_upper(Field::prime(5).unwrap(), 5), y in strictly_upper(Field::prime(5).unwrap(), 5)) {
        bch_matches_matrices(Field::prime(5).unwrap(), 4, &x, &y)?;
    }

    #[test]
    fn bch_in_characteristic_seven(x in strictly_upper(Field::prime(7).unwrap(), 4), y in strictly_upper(Field::prime(7).unwrap(), 4)) {
        bch_matches_matrices(Field::prime(7).unwrap(), 6, &x, &y)?;
    }

    #[test]
    fn bch_over_the_rationals(x in strictly_upper(Field::Rational, 4), y in strictly_upper(Field::Rational, 4)) {
        bch_matches_matrices(Field::Rational, 3, &x, &y)?;
    }
}

#[test]
fn zero_coefficients_are_dropped() {
    let mut e = FreeElement::zero();
    e.add_term(FreeWord::parse("xy").unwrap(), &q(1, 2));
    e.add_term(FreeWord::parse("xy").unwrap(), &q(-1, 2));
    assert!(e.is_zero());
    assert!(e.coeff(&FreeWord::parse("xy").unwrap()).is_zero());
}
