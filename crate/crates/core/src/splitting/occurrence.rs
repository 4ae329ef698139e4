use std::collections::{BTreeMap, BTreeSet};

use super::{l_expression, r_expression, shared_variable, SplitVarId};
use crate::hopf::Variable;
use crate::rep::Report;

fn occurrences(n: usize, expr: impl Fn(usize, usize, usize) -> super::LinearExpr) -> BTreeMap<SplitVarId, usize> {
    let mut counts: BTreeMap<SplitVarId, usize> = SplitVarId::all(n).map(|v| (v, 0)).collect();
    for v in Variable::all(n) {
        for s in expr(v.i, v.j, n).summands {
            *counts.get_mut(&s).expect("known variable") += 1;
        }
    }
    counts
}

/// Scan the `L` and `R` expressions of `U_n` for the occurrence pattern:
/// every split variable occurs at most once among the `L`s and at most once
/// among the `R`s; the `s^1` variables are exactly those absent from every
/// `L`; the `s_ij^{j-i+1}` are exactly those absent from every `R`; and
/// `L_ij`, `R_uv` share only `s_iv^{j-i+1}`, and only when `j = u`.
pub fn occurrence_report(n: usize) -> Report {
    let mut report = Report::new("occurrence");
    let l_counts = occurrences(n, |i, j, n| l_expression(i, j, n).expect("valid pair"));
    let r_counts = occurrences(n, |i, j, n| r_expression(i, j, n).expect("valid pair"));
    for (family, counts) in [("L", &l_counts), ("R", &r_counts)] {
        for (v, &c) in counts {
            report.expect(c <= 1, "occurrence-unique", || format!("{v} in the {family} family"), || "at most once".into(), || format!("{c} times"));
        }
    }
    for (v, &c) in &l_counts {
        let expected_absent = v.k == 1;
        report.expect(
            (c == 0) == expected_absent,
            "occurrence-absent-left",
            || v.to_string(),
            || if expected_absent { "absent from every L".into() } else { "present in some L".into() },
            || format!("{c} occurrence(s)"),
        );
    }
    for (v, &c) in &r_counts {
        let expected_absent = v.k == v.j - v.i + 1;
        report.expect(
            (c == 0) == expected_absent,
            "occurrence-absent-right",
            || v.to_string(),
            || if expected_absent { "absent from every R".into() } else { "present in some R".into() },
            || format!("{c} occurrence(s)"),
        );
    }
    for a in Variable::all(n) {
        let l: BTreeSet<SplitVarId> = l_expression(a.i, a.j, n).expect("valid pair").summands.into_iter().collect();
        for b in Variable::all(n) {
            let r: BTreeSet<SplitVarId> = r_expression(b.i, b.j, n).expect("valid pair").summands.into_iter().collect();
            let actual: BTreeSet<SplitVarId> = l.intersection(&r).copied().collect();
            let expected: BTreeSet<SplitVarId> =
                shared_variable((a.i, a.j), (b.i, b.j), n).expect("valid pair").into_iter().collect();
            let show = |s: &BTreeSet<SplitVarId>| format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
            report.expect(
                actual == expected,
                "occurrence-shared",
                || format!("L{}{} and R{}{}", a.i, a.j, b.i, b.j),
                || show(&expected),
                || show(&actual),
            );
        }
    }
    report
}
