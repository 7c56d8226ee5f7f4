use std::collections::BTreeSet;

use ringlab_core::harness::{run_all, Status, TheoremId};
use ringlab_core::Limits;

#[test]
fn full_catalog_has_no_failures_and_covers_every_theorem() {
    let report = run_all(0, &Limits::default()).unwrap();
    println!("{}", report.summary_table());
    let fails: Vec<_> = report.verdicts.iter().filter(|v| v.status == Status::Fail).collect();
    assert!(fails.is_empty(), "{fails:#?}");
    let passed: BTreeSet<TheoremId> = report.verdicts.iter().filter(|v| v.passed()).map(|v| v.theorem).collect();
    for t in TheoremId::ALL {
        assert!(passed.contains(t), "{t} never passes");
    }
}

#[test]
fn no_pass_with_a_false_hypothesis() {
    let report = run_all(5, &Limits::default()).unwrap();
    for v in &report.verdicts {
        if v.status == Status::Pass {
            assert!(v.hypotheses.iter().all(|h| h.holds), "{v:?}");
            assert!(v.conclusions.iter().all(|c| c.holds), "{v:?}");
        }
        if v.status == Status::HypothesisViolation {
            assert!(v.conclusions.is_empty());
            assert!(!v.first_failing.as_ref().unwrap().holds);
        }
    }
}

#[test]
fn counterexamples_yield_hypothesis_violations() {
    let report = run_all(0, &Limits::default()).unwrap();
    let hv = |t: TheoremId, id: &str| {
        report
            .verdicts
            .iter()
            .any(|v| v.theorem == t && v.instance == id && v.status == Status::HypothesisViolation)
    };
    for id in ["collapse_inert_f4", "collapse_decomposed_f5", "collapse_ramified_f5"] {
        assert!(hv(TheoremId::Thm26, id), "{id}");
    }
    assert!(hv(TheoremId::Thm26, "char_violation_f4_idealization"));
    assert!(hv(TheoremId::Thm26, "invariance_negative_swap"));
    assert!(hv(TheoremId::Thm36, "funcfield_translate_negative"));
}

#[test]
fn reports_are_deterministic() {
    let a = run_all(0, &Limits::default()).unwrap().to_json();
    let b = run_all(0, &Limits::default()).unwrap().to_json();
    assert_eq!(a, b);
}
