use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::decompose::{top_layer, DECOMPOSE_REGIME};
use super::{RepError, Report, Representation};
use crate::arith::{Field, Scalar};
use crate::hopf::{
    evaluate_matrix, matrix_product_tensor_side, variable_count, CoproductCache, ExponentMatrix, TensorElement, Variable,
};
use crate::linalg::{nilpotency_index, ScalarMatrix};
use crate::splitting::split_coproduct;

/// How the left side `Δ(a_ij)` of the comodule identity is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoproductRoute {
    /// Apply the algebra map `Δ` to each entry.
    Direct,
    /// Use the closed splitting formula on the coefficient table.
    Splitting,
    /// Compute both and also require them to agree.
    Both,
}

/// `Δ(a_ij) = Σ_k a_ik ⊗ a_kj`, `ε(a_ij) = δ_ij` and `χ(0) = I`, checked
/// exactly and entry by entry.
pub fn verify_comodule(r: &Representation) -> Report {
    verify_comodule_with(r, CoproductRoute::Direct)
}

pub fn verify_comodule_with(r: &Representation, route: CoproductRoute) -> Report {
    let mut report = Report::new("comodule");
    let (n, field, d) = (r.ambient_size(), r.field(), r.dimension());
    let poly = r.poly();

    let zero = ExponentMatrix::zero(n);
    let chi0 = r.chi().chi(&zero);
    report.expect(
        chi0.is_identity(),
        "chi-zero-identity",
        || "chi(0)".into(),
        || "identity".into(),
        || chi0.to_string(),
    );

    let rhs = matrix_product_tensor_side(poly);
    let direct = match route {
        CoproductRoute::Direct | CoproductRoute::Both => Some(CoproductCache::new(n, field).apply_matrix(poly)),
        CoproductRoute::Splitting => None,
    };
    let split = match route {
        CoproductRoute::Splitting | CoproductRoute::Both => Some(split_coproduct(r.chi())),
        CoproductRoute::Direct => None,
    };
    for i in 0..d {
        for j in 0..d {
            let lhs = direct.as_ref().or(split.as_ref()).expect("at least one route")[(i, j)].clone();
            compare_tensors(&mut report, "coproduct", (i, j), &lhs, &rhs[(i, j)]);
            if let (Some(a), Some(b)) = (&direct, &split) {
                compare_tensors(&mut report, "coproduct-routes-agree", (i, j), &b[(i, j)], &a[(i, j)]);
            }
            let eps = poly[(i, j)].counit();
            let want = if i == j { field.one() } else { field.zero() };
            report.expect(
                eps == want,
                "counit",
                || format!("entry ({}, {})", i + 1, j + 1),
                || want.to_string(),
                || eps.to_string(),
            );
        }
    }
    report
}

fn compare_tensors(report: &mut Report, check: &str, (i, j): (usize, usize), actual: &TensorElement, expected: &TensorElement) {
    let diff = actual.sub(expected);
    let first = diff.terms().next().map(|((l, r), _)| (l.clone(), r.clone()));
    report.expect(
        first.is_none(),
        check,
        || match &first {
            Some((l, r)) => format!("entry ({}, {}), term {l}⊗{r}", i + 1, j + 1),
            None => String::new(),
        },
        || first.as_ref().map(|(l, r)| expected.coeff(l, r).to_string()).unwrap_or_default(),
        || first.as_ref().map(|(l, r)| actual.coeff(l, r).to_string()).unwrap_or_default(),
    );
}

/// Evaluation points for the pointwise group law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointwiseMode {
    /// Every ordered pair of elements of `U_n(F_p)`.
    Exhaustive,
    /// `count` random pairs drawn from a seeded generator.
    Sampled { count: usize, seed: u64 },
}

/// Upper limit on the number of pairs visited in exhaustive mode.
pub const EXHAUSTIVE_PAIR_LIMIT: u128 = 50_000_000;

/// `Φ(1) = I` and `Φ(g)Φ(h) = Φ(gh)` at points of `U_n(k)`.
pub fn verify_group_law_pointwise(r: &Representation, mode: PointwiseMode) -> Result<Report, RepError> {
    let (n, field) = (r.ambient_size(), r.field());
    let nv = variable_count(n);
    let mut report = Report::new("group-law");
    let at_one = evaluate_matrix(r.poly(), &vec![field.zero(); nv]);
    report.expect(at_one.is_identity(), "group-law-identity", || "g = 1".into(), || "identity".into(), || at_one.to_string());

    match mode {
        PointwiseMode::Exhaustive => {
            let p = match field {
                Field::Prime(p) => p,
                Field::Rational => return Err(RepError::Mode("exhaustive evaluation needs a finite field".into())),
            };
            let points = (p as u128).checked_pow(nv as u32).unwrap_or(u128::MAX);
            if points.saturating_mul(points) > EXHAUSTIVE_PAIR_LIMIT {
                return Err(RepError::Mode(format!("{points}^2 pairs exceed the exhaustive limit")));
            }
            let points = points as usize;
            let coords: Vec<Vec<Scalar>> = (0..points).map(|k| point_from_index(field, k, nv)).collect();
            let groups: Vec<ScalarMatrix> = coords.iter().map(|c| group_element(field, n, c)).collect();
            let images: Vec<ScalarMatrix> = coords.iter().map(|c| evaluate_matrix(r.poly(), c)).collect();
            for a in 0..points {
                for b in 0..points {
                    let prod = groups[a].mul(&groups[b]);
                    let c = index_of_element(&prod, n, p);
                    let lhs = images[a].mul(&images[b]);
                    report.expect(
                        lhs == images[c],
                        "group-law",
                        || format!("g = {}, h = {}", groups[a], groups[b]),
                        || images[c].to_string(),
                        || lhs.to_string(),
                    );
                }
            }
        }
        PointwiseMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let g: Vec<Scalar> = (0..nv).map(|_| random_scalar(field, &mut rng)).collect();
                let h: Vec<Scalar> = (0..nv).map(|_| random_scalar(field, &mut rng)).collect();
                let (gm, hm) = (group_element(field, n, &g), group_element(field, n, &h));
                let prod = gm.mul(&hm);
                let lhs = evaluate_matrix(r.poly(), &g).mul(&evaluate_matrix(r.poly(), &h));
                let rhs = evaluate_matrix(r.poly(), &coordinates(&prod, n));
                report.expect(lhs == rhs, "group-law", || format!("g = {gm}, h = {hm}"), || rhs.to_string(), || lhs.to_string());
            }
        }
    }
    Ok(report)
}

fn random_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rational => field.from_i64(rng.gen_range(-4..=4)),
    }
}

fn point_from_index(field: Field, mut k: usize, nv: usize) -> Vec<Scalar> {
    let p = field.characteristic() as usize;
    (0..nv)
        .map(|_| {
            let digit = k % p;
            k /= p;
            field.from_i64(digit as i64)
        })
        .collect()
}

fn index_of_element(g: &ScalarMatrix, n: usize, p: u64) -> usize {
    let mut k = 0usize;
    for (pos, c) in coordinates(g, n).iter().enumerate() {
        k += c.as_residue().expect("residue") as usize * (p as usize).pow(pos as u32);
    }
    k
}

/// The unipotent matrix with coordinates listed in row-major order.
pub fn group_element(field: Field, n: usize, coords: &[Scalar]) -> ScalarMatrix {
    let mut g = ScalarMatrix::identity_in(field, n);
    for (v, c) in Variable::all(n).zip(coords) {
        g[(v.i - 1, v.j - 1)] = c.clone();
    }
    g
}

fn coordinates(g: &ScalarMatrix, n: usize) -> Vec<Scalar> {
    Variable::all(n).map(|v| g[(v.i - 1, v.j - 1)].clone()).collect()
}

/// The nilpotency of `χ(p^m ε_rs)` and the bracket table
/// `[χ(p^m ε_rs), χ(p^n ε_tu)] = δ_mn χ(p^m [ε_rs, ε_tu])`.
pub fn verify_chi_relations(r: &Representation) -> Result<Report, RepError> {
    let (n, field, d, p) = (r.ambient_size(), r.field(), r.dimension(), r.characteristic());
    if p == 0 {
        return Err(RepError::Mode("the layer relations are stated in positive characteristic".into()));
    }
    let mut report = Report::new("chi-relations");
    if p < n.max(2 * d) as u64 {
        report.note(format!("input is outside the regime {DECOMPOSE_REGIME}; findings need not be violations"));
    }
    let top = top_layer(r).unwrap_or(0);
    let chi = r.chi();
    let vars: Vec<Variable> = Variable::all(n).collect();
    let powers: Vec<u64> = (0..=top as u32).map(|l| p.pow(l)).collect();
    for (l, &q) in powers.iter().enumerate() {
        for &v in &vars {
            let m = chi.chi_single(v.i, v.j, q);
            let ok = nilpotency_index(&m, d).is_ok();
            report.expect(
                ok,
                "layer-nilpotent",
                || format!("chi({q} e{}{}) (layer {l})", v.i, v.j),
                || format!("nilpotent of index <= {d}"),
                || m.to_string(),
            );
        }
    }
    for (l1, &q1) in powers.iter().enumerate() {
        for (l2, &q2) in powers.iter().enumerate() {
            for &u in &vars {
                for &w in &vars {
                    let a = chi.chi_single(u.i, u.j, q1);
                    let b = chi.chi_single(w.i, w.j, q2);
                    let actual = a.commutator(&b)?;
                    let expected = match (l1 == l2, u.bracket(w)) {
                        (true, Some((sign, c))) => chi.chi_single(c.i, c.j, q1).scale(&field.from_i64(sign)),
                        _ => ScalarMatrix::zeros_in(field, d, d),
                    };
                    report.expect(
                        actual == expected,
                        "layer-bracket",
                        || format!("[chi({q1} e{}{}), chi({q2} e{}{})]", u.i, u.j, w.i, w.j),
                        || expected.to_string(),
                        || actual.to_string(),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::generic_element;
    use crate::rep::ChiTable;

    fn ga(f: Field) -> Representation {
        let mut t = ChiTable::trivial(2, f, 2);
        t.insert(ExponentMatrix::elementary(2, 1, 2, 1), ScalarMatrix::unit_in(f, 2, 0, 1)).unwrap();
        Representation::from_chi(t)
    }

    #[test]
    fn trivial_and_ga_pass() {
        let f = Field::prime(5).unwrap();
        assert!(verify_comodule(&Representation::from_chi(ChiTable::trivial(3, f, 2))).passed());
        let r = ga(f);
        assert!(verify_comodule_with(&r, CoproductRoute::Both).passed());
        let rep = verify_group_law_pointwise(&r, PointwiseMode::Exhaustive).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 1 + 25);
    }

    #[test]
    fn missing_square_term_fails() {
        // χ(ε_12) = A with A² ≠ 0 needs χ(2 ε_12) = A²/2
        let f = Field::Rational;
        let mut t = ChiTable::trivial(2, f, 3);
        let a = ScalarMatrix::from_i64_rows(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        t.insert(ExponentMatrix::elementary(2, 1, 2, 1), a).unwrap();
        let report = verify_comodule(&Representation::from_chi(t));
        assert!(!report.passed());
        assert!(report.findings.iter().all(|x| x.check == "coproduct"));
    }

    #[test]
    fn tautological_exhaustive() {
        let f = Field::prime(3).unwrap();
        let r = Representation::from_poly(generic_element(3, f)).unwrap();
        let rep = verify_group_law_pointwise(&r, PointwiseMode::Exhaustive).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 1 + 27 * 27);
        assert!(verify_group_law_pointwise(&r, PointwiseMode::Sampled { count: 20, seed: 3 }).unwrap().passed());
    }

    #[test]
    fn exhaustive_over_rationals_is_an_error() {
        let r = ga(Field::Rational);
        assert!(matches!(verify_group_law_pointwise(&r, PointwiseMode::Exhaustive), Err(RepError::Mode(_))));
        assert!(verify_group_law_pointwise(&r, PointwiseMode::Sampled { count: 10, seed: 1 }).unwrap().passed());
    }

    #[test]
    fn tautological_chi_relations() {
        let f = Field::prime(7).unwrap();
        let r = Representation::from_poly(generic_element(3, f)).unwrap();
        assert!(verify_chi_relations(&r).unwrap().passed());
        let trivial = Representation::from_chi(ChiTable::trivial(3, f, 1));
        assert!(verify_chi_relations(&trivial).unwrap().passed());
    }
}
