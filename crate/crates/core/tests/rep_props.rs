use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unirep::arith::Field;
use unirep::hopf::{
    coproduct, frobenius_substitute_matrix, generic_element, ExponentMatrix, PolyMatrix, Polynomial, TensorElement,
    Variable,
};
use unirep::linalg::{Matrix, ScalarMatrix};
use unirep::rep::random::{random_layer_data, random_morphism_case};
use unirep::rep::{
    audit_structure_lemmas, construct_from_layers, decompose_to_layers, frobenius_twist_rep, layer_exponent,
    layer_morphism_equivalence, verify_chi_relations, verify_comodule, verify_comodule_with, verify_group_law_pointwise,
    CoproductRoute, LemmaOptions, LieLayerData, PointwiseMode, RepError, Representation,
};

/// `(n, d, p, layer count)` with `p >= max(n, 2d)`.
fn config() -> impl Strategy<Value = (usize, usize, u64, usize)> {
    prop_oneof![
        Just((2, 2, 5, 2)),
        Just((2, 3, 7, 3)),
        Just((3, 2, 5, 1)),
        Just((3, 2, 7, 2)),
        Just((3, 3, 7, 1)),
        Just((4, 2, 5, 2)),
        Just((4, 3, 11, 2)),
    ]
}

fn random_data(cfg: (usize, usize, u64, usize), seed: u64) -> LieLayerData {
    let (n, d, p, m) = cfg;
    random_layer_data(n, Field::prime(p).unwrap(), d, m, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn construct_then_decompose_is_identity(cfg in config(), seed in any::<u64>()) {
        let data = random_data(cfg, seed);
        let r = construct_from_layers(&data).unwrap();
        let (layers, report) = decompose_to_layers(&r).unwrap();
        prop_assert!(report.passed());
        prop_assert_eq!(layers, data.trimmed());
    }

    #[test]
    fn constructed_representations_are_comodules(cfg in config(), seed in any::<u64>()) {
        let r = construct_from_layers(&random_data(cfg, seed)).unwrap();
        let report = verify_comodule_with(&r, CoproductRoute::Both);
        prop_assert!(report.passed(), "{:?}", report.findings);
    }

    #[test]
    fn constructed_representations_pass_the_audits(cfg in config(), seed in any::<u64>()) {
        let r = construct_from_layers(&random_data(cfg, seed)).unwrap();
        let relations = verify_chi_relations(&r).unwrap();
        prop_assert!(relations.passed(), "{:?}", relations.findings);
        let lemmas = audit_structure_lemmas(&r, LemmaOptions::default()).unwrap();
        prop_assert!(lemmas.passed(), "{:?}", lemmas.findings);
    }

    #[test]
    fn twisting_shifts_the_layers(cfg in config(), seed in any::<u64>()) {
        let data = random_data(cfg, seed);
        let twisted = frobenius_twist_rep(&construct_from_layers(&data).unwrap()).unwrap();
        prop_assert!(verify_comodule(&twisted).passed());
        prop_assert_eq!(decompose_to_layers(&twisted).unwrap().0, data.trimmed().shifted());
    }

    #[test]
    fn sampled_group_law(cfg in config(), seed in any::<u64>()) {
        let r = construct_from_layers(&random_data(cfg, seed)).unwrap();
        let report = verify_group_law_pointwise(&r, PointwiseMode::Sampled { count: 40, seed }).unwrap();
        prop_assert!(report.passed());
    }

    #[test]
    fn chi_table_round_trips_through_polynomials(cfg in config(), seed in any::<u64>()) {
        let r = construct_from_layers(&random_data(cfg, seed)).unwrap();
        let again = Representation::from_poly(r.chi().assemble()).unwrap();
        prop_assert_eq!(again, r);
    }

    #[test]
    fn morphism_sides_agree(seed in any::<u64>(), designed in any::<bool>(), layers in 1usize..=2) {
        let f = Field::prime(11).unwrap();
        let case = random_morphism_case(3, f, 2, layers, designed, &mut ChaCha8Rng::seed_from_u64(seed));
        let src = construct_from_layers(&case.src).unwrap();
        let dst = construct_from_layers(&case.dst).unwrap();
        let cmp = layer_morphism_equivalence(&case.map, &src, &dst).unwrap();
        prop_assert!(cmp.agree());
        prop_assert!(cmp.report.passed());
        if designed {
            prop_assert!(cmp.full);
        }
    }
}

#[test]
fn exhaustive_group_law_for_small_primes() {
    for (n, d, p, m, seed) in [(3, 2, 5, 1, 1), (3, 3, 5, 2, 2), (2, 3, 7, 2, 3), (2, 2, 5, 3, 4)] {
        let data = random_data((n, d, p, m), seed);
        let r = construct_from_layers(&data).unwrap();
        let report = verify_group_law_pointwise(&r, PointwiseMode::Exhaustive).unwrap();
        assert!(report.passed(), "n = {n}, d = {d}, p = {p}: {:?}", report.findings.first());
    }
}

#[test]
fn heisenberg_layer_exponents() {
    // x = x_12, y = x_23, z = x_13
    let f = Field::prime(7).unwrap();
    let data = random_data((3, 3, 7, 2), 99);
    let var = |i, j| Polynomial::variable(3, f, Variable { i, j });
    for l in 0..data.layer_count() {
        let q = 7u64.pow(l as u32);
        let (x, y, z) = (var(1, 2).pow(q), var(2, 3).pow(q), var(1, 3).pow(q));
        let image = |i, j| data.image(l, Variable { i, j }).map(|c| Polynomial::constant(3, c.clone()));
        let lift = |p: &Polynomial, m: &PolyMatrix| m.map(|e| e.mul(p));
        let zz = z.sub(&x.mul(&y).scale(&f.from_i64(2).inv().unwrap()));
        let expected = lift(&x, &image(1, 2)).add(&lift(&y, &image(2, 3))).add(&lift(&zz, &image(1, 3)));
        let actual = frobenius_substitute_matrix(&layer_exponent(&data, l).unwrap(), q);
        assert_eq!(actual, expected, "layer {l}");
    }
}

#[test]
fn regimes_are_enforced() {
    let f = Field::prime(3).unwrap();
    let data = LieLayerData::tautological(4, f);
    assert!(matches!(construct_from_layers(&data), Err(RepError::Hypothesis { .. })));
    let f = Field::prime(5).unwrap();
    let r = Representation::from_poly(generic_element(3, f)).unwrap();
    let err = decompose_to_layers(&r).unwrap_err();
    assert!(matches!(err, RepError::Hypothesis { .. }));
    assert!(err.to_string().contains("p >= max(n, 2d)"));
}

#[test]
fn characteristic_zero_single_layer() {
    let data = LieLayerData::tautological(3, Field::Rational);
    let r = construct_from_layers(&data).unwrap();
    assert_eq!(r.poly(), &generic_element(3, Field::Rational));
    assert!(verify_comodule(&r).passed());
    assert_eq!(decompose_to_layers(&r).unwrap().0, data);
    let two = LieLayerData::new(3, Field::Rational, 3, vec![data.layer(0).to_vec(), data.layer(0).to_vec()]).unwrap();
    assert!(construct_from_layers(&two).is_err());
}

fn six_dim_example() -> PolyMatrix {
    let f = Field::Rational;
    let var = |i, j| Polynomial::variable(3, f, Variable { i, j });
    let one = Polynomial::one(3, f);
    let zero = Polynomial::zero(3, f);
    let two = |p: Polynomial| p.scale(&f.from_i64(2));
    let (x12, x13, x23) = (var(1, 2), var(1, 3), var(2, 3));
    let rows = vec![
        vec![one.clone(), two(x12.clone()), x12.clone(), two(x12.mul(&x12)), x13.clone(), two(x12.mul(&x13))],
        vec![zero.clone(), one.clone(), zero.clone(), x12.clone(), zero.clone(), x13.clone()],
        vec![zero.clone(), zero.clone(), one.clone(), two(x12.clone()), x23.clone(), two(x12.mul(&x23))],
        vec![zero.clone(), zero.clone(), zero.clone(), one.clone(), zero.clone(), x23.clone()],
        vec![zero.clone(), zero.clone(), zero.clone(), zero.clone(), one.clone(), two(x12.clone())],
        vec![zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(), one],
    ];
    Matrix::from_rows(rows).unwrap()
}

#[test]
fn six_dimensional_fixture_coefficients() {
    let f = Field::Rational;
    let r = Representation::from_poly(six_dim_example()).unwrap();
    let e = |i, j, k| ExponentMatrix::elementary(3, i, j, k);
    let only = |entries: &[(usize, usize, i64)]| {
        let mut m = ScalarMatrix::zeros_in(f, 6, 6);
        for &(a, b, c) in entries {
            m[(a - 1, b - 1)] = f.from_i64(c);
        }
        m
    };
    assert_eq!(r.chi().chi(&e(1, 2, 1).add(&e(1, 3, 1))), only(&[(1, 6, 2)]));
    assert_eq!(r.chi().chi(&e(1, 2, 1)), only(&[(1, 2, 2), (1, 3, 1), (2, 4, 1), (3, 4, 2), (5, 6, 2)]));
    assert_eq!(r.chi().chi(&e(1, 2, 2)), only(&[(1, 4, 2)]));
    assert!(r.chi().chi(&e(1, 2, 2).add(&e(1, 3, 1))).is_zero());
    assert_eq!(r.chi().assemble(), six_dim_example());
}

#[test]
fn six_dimensional_fixture_tensor_side() {
    // the (1,6) entry of sum_k a_1k ⊗ a_k6 picks up 2 x_13 ⊗ x_12 from a_15 ⊗ a_56
    let m = six_dim_example();
    let f = Field::Rational;
    let mut side = TensorElement::zero(3, f);
    for k in 0..6 {
        side = side.add(&TensorElement::tensor(&m[(0, k)], &m[(k, 5)]));
    }
    let e = |i, j| ExponentMatrix::elementary(3, i, j, 1);
    assert_eq!(side.coeff(&e(1, 3), &e(1, 2)), f.from_i64(2));
    assert_eq!(coproduct(&m[(0, 5)]).coeff(&e(1, 3), &e(1, 2)), f.from_i64(2));
}
