use std::collections::BTreeSet;

use super::decompose::top_layer;
use super::{RepError, Report, Representation};
use crate::arith::{gamma_factor, p_ary_digits, sum_carries};
use crate::hopf::{ExponentMatrix, Variable};
use crate::linalg::{nilpotency_index, ScalarMatrix};

/// Tuning for [`audit_structure_lemmas`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaOptions {
    /// Besides the support, the factorization is checked on every exponent
    /// matrix built from supported single-entry values, provided there are
    /// at most this many.
    pub product_budget: usize,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions { product_budget: 4096 }
    }
}

/// The factorization of `χ(M)` into single-entry factors, the digit formula
/// for `χ(r ε_ij)`, and the carrying lemma, as three sub-audits.
pub fn audit_structure_lemmas(r: &Representation, opts: LemmaOptions) -> Result<Report, RepError> {
    let mut report = Report::new("structure-lemmas");
    report.absorb(audit_factorization(r, opts));
    if r.characteristic() == 0 {
        report.note("digit formula and carrying audits skipped in characteristic zero");
    } else {
        report.absorb(audit_digit_formula(r));
        report.absorb(audit_carrying(r));
    }
    Ok(report)
}

/// Per coordinate (row-major), `0` and every `r` with `χ(r ε_ij)` supported.
fn single_entry_values(r: &Representation) -> Vec<BTreeSet<u64>> {
    let n = r.ambient_size();
    let mut sets: Vec<BTreeSet<u64>> = Variable::all(n).map(|_| BTreeSet::from([0])).collect();
    for (m, _) in r.chi().iter() {
        if let Some((v, e)) = m.as_single_entry() {
            sets[v.index(n)].insert(e);
        }
    }
    sets
}

/// `Π_{i=n-1}^{1} Π_{j=i+1}^{n} χ(m_ij ε_ij)`.
pub fn factorized_chi(r: &Representation, m: &ExponentMatrix) -> ScalarMatrix {
    let n = r.ambient_size();
    let chi = r.chi();
    let mut acc = ScalarMatrix::identity_in(r.field(), r.dimension());
    for i in (1..n).rev() {
        for j in i + 1..=n {
            // a zero exponent contributes χ(0)
            acc = acc.mul(&chi.chi_single(i, j, m.get(i, j)));
        }
    }
    acc
}

fn audit_factorization(r: &Representation, opts: LemmaOptions) -> Report {
    let mut report = Report::new("factorization");
    let n = r.ambient_size();
    let mut targets: BTreeSet<ExponentMatrix> = r.chi().iter().map(|(m, _)| m.clone()).collect();
    let sets = single_entry_values(r);
    let combos = sets.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len()));
    match combos {
        Some(c) if c <= opts.product_budget => {
            let lists: Vec<Vec<u64>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
            let mut idx = vec![0usize; lists.len()];
            'outer: loop {
                let entries: Vec<u64> = idx.iter().zip(&lists).map(|(&k, l)| l[k]).collect();
                targets.insert(ExponentMatrix::from_raw(n, entries).expect("valid shape"));
                for pos in 0..idx.len() {
                    idx[pos] += 1;
                    if idx[pos] < lists[pos].len() {
                        continue 'outer;
                    }
                    idx[pos] = 0;
                }
                break;
            }
        }
        _ => report.note("product of single-entry values exceeds the budget; only the support is checked"),
    }
    for m in &targets {
        let expected = factorized_chi(r, m);
        let actual = r.chi().chi(m);
        report.expect(actual == expected, "factorization", || format!("chi({m})"), || expected.to_string(), || actual.to_string());
    }
    report
}

fn audit_digit_formula(r: &Representation) -> Report {
    let mut report = Report::new("digit-formula");
    let (n, field, d, p) = (r.ambient_size(), r.field(), r.dimension(), r.characteristic());
    let chi = r.chi();
    let top = top_layer(r).unwrap_or(0);
    let digit_cap = (d as u64 + 1).min(p);
    let sets = single_entry_values(r);
    for v in Variable::all(n) {
        let layers: Vec<ScalarMatrix> = (0..=top as u32).map(|l| chi.chi_single(v.i, v.j, p.pow(l))).collect();
        for (l, x) in layers.iter().enumerate() {
            let nil = nilpotency_index(x, p as usize).is_ok();
            report.expect(
                nil,
                "digit-formula-nilpotent",
                || format!("chi({} e{}{})", p.pow(l as u32), v.i, v.j),
                || format!("nilpotent of index <= {p}"),
                || x.to_string(),
            );
            for (k, y) in layers.iter().enumerate().skip(l + 1) {
                report.expect(
                    x.commutes_with(y),
                    "digit-formula-commute",
                    || format!("chi({} e{}{}) vs chi({} e{}{})", p.pow(l as u32), v.i, v.j, p.pow(k as u32), v.i, v.j),
                    || "commuting".into(),
                    || "non-commuting".into(),
                );
            }
        }
        let mut values: BTreeSet<u64> = sets[v.index(n)].clone();
        // every r whose digits are below the cap, in positions up to the top layer
        let mut digits = vec![0u64; top + 1];
        'outer: loop {
            values.insert(digits.iter().rev().fold(0u64, |acc, &dg| acc * p + dg));
            for pos in 0..digits.len() {
                digits[pos] += 1;
                if digits[pos] < digit_cap {
                    continue 'outer;
                }
                digits[pos] = 0;
            }
            break;
        }
        for &rv in &values {
            let pd = p_ary_digits(rv, p);
            let mut prod = ScalarMatrix::identity_in(field, d);
            for (l, &dg) in pd.digits().iter().enumerate() {
                if dg == 0 {
                    continue;
                }
                let base = if l < layers.len() { layers[l].clone() } else { chi.chi_single(v.i, v.j, p.pow(l as u32)) };
                prod = prod.mul(&base.pow(dg));
            }
            let gamma = field.from_biguint(&gamma_factor(rv, p));
            let expected = prod.scale(&gamma.inv().expect("digits are below p"));
            let actual = chi.chi_single(v.i, v.j, rv);
            report.expect(
                actual == expected,
                "digit-formula",
                || format!("chi({rv} e{}{})", v.i, v.j),
                || expected.to_string(),
                || actual.to_string(),
            );
        }
    }
    report
}

fn audit_carrying(r: &Representation) -> Report {
    let mut report = Report::new("carrying");
    let (d, p) = (r.dimension(), r.characteristic());
    if p < 2 * d as u64 {
        report.note(format!("carrying audit skipped: needs p >= 2d, have p={p}, d={d}"));
        return report;
    }
    let singles: Vec<(Variable, u64)> = r.chi().iter().filter_map(|(m, _)| m.as_single_entry()).collect();
    for (a, &(u, s1)) in singles.iter().enumerate() {
        for &(w, s2) in &singles[a..] {
            // both values are supported, hence nonzero: a carrying sum is a violation
            let carries = sum_carries(s1, s2, p);
            report.expect(
                !carries,
                "carrying",
                || format!("chi({s1} e{}{}), chi({s2} e{}{})", u.i, u.j, w.i, w.j),
                || "one of the two is zero".into(),
                || "both nonzero".into(),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::hopf::generic_element;
    use crate::rep::{construct_from_layers, LieLayerData};

    #[test]
    fn tautological_passes() {
        let f = Field::prime(7).unwrap();
        let r = Representation::from_poly(generic_element(3, f)).unwrap();
        let rep = audit_structure_lemmas(&r, LemmaOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.findings);
        assert!(rep.checked > 0);
    }

    #[test]
    fn ga_two_layer_digit_formula() {
        // χ(6 ε_12) = Γ(6)^{-1} χ(ε_12) χ(5 ε_12) = E_12 E_12 = 0
        let f = Field::prime(5).unwrap();
        let e = ScalarMatrix::unit_in(f, 2, 0, 1);
        let data = LieLayerData::new(2, f, 2, vec![vec![e.clone()], vec![e.clone()]]).unwrap();
        let r = construct_from_layers(&data).unwrap();
        assert!(e.mul(&e).is_zero());
        assert!(r.chi().chi_single(1, 2, 6).is_zero());
        let rep = audit_structure_lemmas(&r, LemmaOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.findings);
    }

    #[test]
    fn carrying_violation_detected() {
        // a table that is not a representation: χ(3 ε_12) ≠ 0 with p = 5, d = 2
        let f = Field::prime(5).unwrap();
        let mut t = crate::rep::ChiTable::trivial(2, f, 2);
        t.insert(ExponentMatrix::elementary(2, 1, 2, 3), ScalarMatrix::unit_in(f, 2, 0, 1)).unwrap();
        let r = Representation::from_chi(t);
        let rep = audit_structure_lemmas(&r, LemmaOptions::default()).unwrap();
        assert!(rep.findings.iter().any(|x| x.check == "carrying"));
    }
}
