use proptest::prelude::*;

use unirep::arith::Field;
use unirep::hopf::{coassociativity_sides, coproduct, variable_count, ExponentMatrix, Polynomial};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(3).unwrap()), Just(Field::prime(5).unwrap())]
}

fn poly_strategy(n: usize, field: Field) -> impl Strategy<Value = Polynomial> {
    let slots = variable_count(n);
    prop::collection::vec((prop::collection::vec(0u64..=2, slots), -3i64..=3), 0..=4).prop_map(move |terms| {
        let mut f = Polynomial::zero(n, field);
        for (raw, c) in terms {
            f.add_term(ExponentMatrix::from_raw(n, raw).unwrap(), &field.from_i64(c));
        }
        f
    })
}

fn poly_pair() -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (2usize..=4, field_strategy()).prop_flat_map(|(n, f)| (poly_strategy(n, f), poly_strategy(n, f)))
}

fn prime_poly() -> impl Strategy<Value = Polynomial> {
    (2usize..=3, prop_oneof![Just(2u64), Just(3), Just(5)]).prop_flat_map(|(n, p)| poly_strategy(n, Field::prime(p).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_coassociative((f, _) in poly_pair()) {
        let (lhs, rhs) = coassociativity_sides(&coproduct(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_respects_counit((f, _) in poly_pair()) {
        let t = coproduct(&f);
        prop_assert_eq!(t.counit_right(), f.clone());
        prop_assert_eq!(t.counit_left(), f);
    }

    #[test]
    fn coproduct_is_multiplicative((f, g) in poly_pair()) {
        prop_assert_eq!(coproduct(&f.mul(&g)), coproduct(&f).mul(&coproduct(&g)));
        prop_assert_eq!(coproduct(&f.add(&g)), coproduct(&f).add(&coproduct(&g)));
    }

    #[test]
    fn counit_is_multiplicative((f, g) in poly_pair()) {
        prop_assert_eq!(f.mul(&g).counit(), &f.counit() * &g.counit());
    }

    #[test]
    fn coproduct_commutes_with_frobenius(f in prime_poly()) {
        let p = f.field().characteristic();
        prop_assert_eq!(coproduct(&f.frobenius_substitute(p)), coproduct(&f).frobenius_substitute(p));
    }

    #[test]
    fn frobenius_substitutions_compose(f in prime_poly()) {
        let p = f.field().characteristic();
        prop_assert_eq!(f.frobenius_substitute(p).frobenius_substitute(p), f.frobenius_substitute(p * p));
    }

    #[test]
    fn prime_power_is_substitution(f in prime_poly()) {
        // coefficients lie in F_p, so f^p = f^[p]
        let p = f.field().characteristic();
        let naive = (0..p).fold(Polynomial::one(f.ambient_size(), f.field()), |acc, _| acc.mul(&f));
        prop_assert_eq!(f.pow(p), naive.clone());
        prop_assert_eq!(naive, f.frobenius_substitute(p));
    }

    #[test]
    fn tensor_power_matches_repeated_product(f in prime_poly(), e in 0u64..=6) {
        let t = coproduct(&f);
        let naive = (0..e).fold(unirep::hopf::TensorElement::one(f.ambient_size(), f.field()), |acc, _| acc.mul(&t));
        prop_assert_eq!(t.pow(e), naive);
        prop_assert_eq!(coproduct(&f.pow(e)), t.pow(e));
    }

    #[test]
    fn evaluation_is_a_ring_map((f, g) in poly_pair(), seed in 0i64..1000) {
        let field = f.field();
        let point: Vec<_> = (0..variable_count(f.ambient_size())).map(|k| field.from_i64((seed + 7 * k as i64) % 11 - 5)).collect();
        prop_assert_eq!(f.mul(&g).evaluate(&point), &f.evaluate(&point) * &g.evaluate(&point));
        prop_assert_eq!(f.add(&g).evaluate(&point), &f.evaluate(&point) + &g.evaluate(&point));
    }
}
