//! Acceptance criteria AC1–AC9. Each test prints one PASS/FAIL line.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ringlab_core::action::{symmetrize_representation, verify_certificate, SymmetrizeMode, SymmetrizeOutcome};
use ringlab_core::extend::{extension_filter, is_minimal_extension};
use ringlab_core::funcfield::{
    fixed_samples, integrally_closed_fixed_check, perfect_localization_fixed_check, valuation_axioms_check,
    valuation_pair_fixed_check,
};
use ringlab_core::harness::{
    catalog, find, random_representation, run_all, verify, Confidence, FiniteSetting, FuncSetting, Instance,
    Setting, Status, TheoremId, COLLAPSE_TAG,
};
use ringlab_core::ideals::{conductor, max_ideals, Ideal};
use ringlab_core::ring::{is_simple_module, subring_closure, Shape};
use ringlab_core::{classify_extension, Construction, ExtensionKind, FiniteRing, Limits, SubringHandle};

/// Every exact comparison below uses this tolerance.
const EXACT: usize = 0;

fn line(ac: &str, ok: bool, detail: String) {
    println!("{ac} {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn within(ac: &str, start: Instant, budget: Duration) -> bool {
    let spent = start.elapsed();
    let ok = spent < budget;
    if !ok {
        println!("{ac} over budget: {spent:?} ≥ {budget:?}");
    }
    ok
}

fn finite_settings() -> Vec<(Instance, FiniteSetting)> {
    catalog()
        .into_iter()
        .filter_map(|i| match i.materialize(&Limits::default()).unwrap() {
            Setting::Finite(s) => Some((i, s)),
            Setting::Func(_) => None,
        })
        .collect()
}

fn func_settings() -> Vec<(Instance, FuncSetting)> {
    ["funcfield_p5_a2", "funcfield_p7_a3"]
        .iter()
        .map(|id| {
            let i = find(id).unwrap();
            match i.materialize(&Limits::default()).unwrap() {
                Setting::Func(f) => (i, f),
                Setting::Finite(_) => unreachable!(),
            }
        })
        .collect()
}

fn closed(ring: &FiniteRing, set: &SubringHandle) -> bool {
    set.contains(ring.one())
        && set.iter().all(|a| {
            set.contains(ring.neg(a)) && set.iter().all(|b| set.contains(ring.add(a, b)) && set.contains(ring.mul(a, b)))
        })
}

#[test]
fn ac1_axioms_and_closure() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut exprs: Vec<String> = (1..=36).map(|n| format!("zmod({n})")).collect();
    exprs.extend(
        [
            "gf(2,1)", "gf(2,2)", "gf(2,3)", "gf(2,4)", "gf(2,5)", "gf(2,6)", "gf(2,7)", "gf(2,8)", "gf(3,2)",
            "gf(3,3)", "gf(3,4)", "gf(5,2)", "gf(7,2)", "gf(11,2)", "gf(13,2)", "gf(2,2,x^2+x+1)",
            "prod(gf(3,2),gf(3,2))", "prod(zmod(4),gf(2,2))", "prod(prod(gf(2,1),gf(2,1)),gf(2,1))",
            "prod(zmod(6),zmod(10))", "idealization(gf(3,2),self)", "idealization(gf(2,2),self)",
            "idealization(zmod(4),quot{2})", "idealization(zmod(8),quot{2})", "idealization(zmod(9),self)",
            "idealization(gf(5,1),self)", "idealization(zmod(6),quot{3})", "idealization(zmod(4),self)",
            "quotient(zmod(12),{4})", "quotient(prod(zmod(4),zmod(4)),{(2,2)})", "quotient(zmod(36),{6})",
        ]
        .map(String::from),
    );
    let mut rings = 0;
    let mut bad = Vec::new();
    let mut simple_checks = 0;
    for e in &exprs {
        let c: Construction = e.parse().unwrap();
        let t = c.build(&limits).unwrap();
        if t.order() > 256 {
            continue;
        }
        rings += 1;
        if let Err(err) = t.check_axioms() {
            bad.push(format!("{e}: {err}"));
        }
        for x in t.elements().step_by((t.order() / 8).max(1)) {
            let s = subring_closure(&t, [x]);
            let again = subring_closure(&t, s.iter());
            if again != s || !closed(&t, &s) {
                bad.push(format!("{e}: closure of {}", t.label(x)));
            }
        }
        if let Shape::Idealization(_, m) = t.shape() {
            let k = m.order();
            let base = SubringHandle::new(&t, t.elements().filter(|x| x % k == m.zero()).collect()).unwrap();
            if is_simple_module(m).unwrap() != is_minimal_extension(&base, &t.full()).unwrap() {
                bad.push(format!("{e}: simple-module criterion disagrees with the oracle"));
            }
            simple_checks += 1;
        }
    }
    let ok = bad.len() == EXACT && within("AC1", start, Duration::from_secs(10));
    line("AC1", ok, format!("{rings} rings ≤ 256 checked, {simple_checks} idealization criteria, {bad:?}"));
    assert!(ok);
}

/// Independent case predicates on the conductor C of a minimal R ⊂ T.
fn case_matches(inner: &SubringHandle, outer: &SubringHandle) -> usize {
    let limits = Limits::default();
    let c = conductor(inner, outer).unwrap();
    let c_t = Ideal::new(outer, c.members().clone()).unwrap();
    let maxes = max_ideals(outer, &limits).unwrap();
    let inert = c_t.is_maximal();
    let decomposed = maxes.iter().enumerate().any(|(i, a)| {
        maxes[i + 1..].iter().any(|b| a.intersect(b).map(|x| x.members() == c.members()).unwrap_or(false))
    });
    let ramified = maxes.iter().any(|n| {
        c.members().is_subset(n.members())
            && c.members() != n.members()
            && n.product(n).map(|sq| sq.members().is_subset(c.members())).unwrap_or(false)
    });
    [inert, decomposed, ramified].iter().filter(|x| **x).count()
}

#[test]
fn ac2_classification_consistency() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut pairs: Vec<(String, SubringHandle, SubringHandle)> = Vec::new();
    for (i, s) in finite_settings() {
        pairs.push((i.id.clone(), s.inner.clone(), s.outer.clone()));
        if let Some(rg) = &s.fixed_inner {
            pairs.push((format!("{}^G", i.id), rg.clone(), s.fixed_outer.clone()));
        }
    }
    let mut bad = Vec::new();
    let mut minimal = 0;
    for (id, r, t) in &pairs {
        if r == t {
            continue;
        }
        let report = classify_extension(r, t, &limits).unwrap();
        let oracle = is_minimal_extension(r, t).unwrap();
        if report.kind.is_minimal() != oracle {
            bad.push(format!("{id}: {} vs oracle {oracle}", report.kind));
        }
        if oracle {
            minimal += 1;
            let n = case_matches(r, t);
            if n != 1 {
                bad.push(format!("{id}: {n} cases match"));
            }
        }
    }
    let ok = bad.len() == EXACT && minimal > 0 && within("AC2", start, Duration::from_secs(30));
    line("AC2", ok, format!("{} extensions, {minimal} minimal, {bad:?}", pairs.len()));
    assert!(ok);
}

#[test]
fn ac3_invariance_of_integral_minimal_extensions() {
    let start = Instant::now();
    let limits = Limits::default();
    let cases = [
        ("inert_f64_f8", ExtensionKind::MinimalInert, 2, 4),
        ("decomposed_f9_diag", ExtensionKind::MinimalDecomposed, 3, 9),
        ("ramified_f9_idealization", ExtensionKind::MinimalRamified, 3, 9),
    ];
    let mut bad = Vec::new();
    for (id, kind, rg_order, tg_order) in cases {
        let inst = find(id).unwrap();
        let Setting::Finite(s) = inst.materialize(&limits).unwrap() else { unreachable!() };
        let rg = s.fixed_inner.clone().unwrap();
        let tg = &s.fixed_outer;
        if (rg.len(), tg.len()) != (rg_order, tg_order) {
            bad.push(format!("{id}: |R^G|, |T^G| = {}, {}", rg.len(), tg.len()));
        }
        let before = classify_extension(&s.inner, &s.outer, &limits).unwrap();
        let after = classify_extension(&rg, tg, &limits).unwrap();
        if before.kind != kind || after.kind != kind {
            bad.push(format!("{id}: {} → {}", before.kind, after.kind));
        }
        let fixed_conductor = conductor(&rg, tg).unwrap();
        if after.crucial_max.as_ref() != Some(&fixed_conductor) {
            bad.push(format!("{id}: crucial ideal differs from the fixed conductor"));
        }
        let m = before.conductor.unwrap().contract(&rg).unwrap();
        if m.members() != fixed_conductor.members() {
            bad.push(format!("{id}: M ∩ R^G differs from the fixed conductor"));
        }
        if kind == ExtensionKind::MinimalDecomposed {
            let mut sizes: Vec<usize> = after.witnesses.iter().map(|n| n.len()).collect();
            sizes.sort();
            if sizes != [3, 3] {
                bad.push(format!("{id}: decomposition ideals of sizes {sizes:?}"));
            }
        }
        let v = verify(TheoremId::Thm26, &inst, 0, &limits).unwrap();
        if v.status != Status::Pass {
            bad.push(format!("{id}: verdict {}", v.status));
        }
    }
    let ok = bad.len() == EXACT && within("AC3", start, Duration::from_secs(60));
    line("AC3", ok, format!("3 positive instances, {bad:?}"));
    assert!(ok);
}

#[test]
fn ac4_collapses_violate_hypotheses() {
    let limits = Limits::default();
    let claims = [
        TheoremId::Thm26,
        TheoremId::Lemma22a,
        TheoremId::Lemma31,
        TheoremId::Prop43,
        TheoremId::Cor44,
    ];
    let mut bad = Vec::new();
    let collapses: Vec<Instance> = catalog().into_iter().filter(|i| i.has_tag(COLLAPSE_TAG)).collect();
    for inst in &collapses {
        let Setting::Finite(s) = inst.materialize(&limits).unwrap() else { unreachable!() };
        if s.fixed_inner.as_ref() != Some(&s.fixed_outer) {
            bad.push(format!("{}: R^G ≠ T^G", inst.id));
        }
        for t in claims {
            let v = verify(t, inst, 0, &limits).unwrap();
            if v.status != Status::HypothesisViolation || !v.conclusions.is_empty() {
                bad.push(format!("{}: {t} {}", inst.id, v.status));
            }
        }
        let v = verify(TheoremId::Thm26, inst, 0, &limits).unwrap();
        if v.first_failing.map(|c| c.name) != Some("R^G ≠ T^G".into()) {
            bad.push(format!("{}: thm_2_6 fails on another hypothesis", inst.id));
        }
    }
    let ok = collapses.len() == 3 && bad.len() == EXACT;
    line("AC4", ok, format!("{} collapse instances, {bad:?}", collapses.len()));
    assert!(ok);
}

/// Evaluates `Π_{s ∈ orbit}(t − s)` directly.
fn orbit_product_vanishes(s: &FiniteSetting, t: usize) -> bool {
    let ring = &s.ring;
    let orbit = ringlab_core::orbit(t, &s.group);
    ring.product(orbit.members.iter().map(|&x| ring.sub(t, x))) == ring.zero()
}

#[test]
fn ac5_section_two_lemmas() {
    let limits = Limits::default();
    let ids = [
        TheoremId::Lemma21,
        TheoremId::Lemma22a,
        TheoremId::Lemma22b,
        TheoremId::Lemma22c,
        TheoremId::Lemma31,
        TheoremId::Lemma32,
        TheoremId::Prop23,
    ];
    let mut bad = Vec::new();
    let mut passes = 0;
    let mut iso_maps = 0;
    for (inst, s) in finite_settings() {
        if !s.outer.iter().all(|t| orbit_product_vanishes(&s, t)) {
            bad.push(format!("{}: orbit product does not vanish", inst.id));
        }
        for t in ids {
            let v = verify(t, &inst, 0, &limits).unwrap();
            match v.status {
                Status::Pass => {
                    passes += 1;
                    if t == TheoremId::Prop23 && v.witnesses.contains_key("witness_map") {
                        iso_maps += 1;
                    }
                }
                Status::HypothesisViolation => {}
                other => bad.push(format!("{}: {t} {other}", inst.id)),
            }
        }
    }
    let ok = bad.len() == EXACT && passes > 0 && iso_maps > 0;
    line("AC5", ok, format!("{passes} applicable checks passed, {iso_maps} explicit isomorphisms, {bad:?}"));
    assert!(ok);
}

#[test]
fn ac6_symmetrization_certificates() {
    let settings: Vec<(Instance, FiniteSetting)> =
        finite_settings().into_iter().filter(|(_, s)| s.fixed_inner.is_some()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut certs, mut runtime_failures, mut full, mut full_expected) = (0, 0, 0, 0);
    let mut bad = Vec::new();
    for k in 0..100 {
        let (inst, s) = &settings[k % settings.len()];
        let ring = &s.ring;
        let (t, terms) = random_representation(s, &mut rng).expect("fixed sums exist");
        match symmetrize_representation(t, &terms, &s.inner, &s.group, SymmetrizeMode::Orbit).unwrap() {
            SymmetrizeOutcome::Certificate(c) => {
                certs += 1;
                let lhs = ring.scalar(c.multiplier, t);
                let rhs = ring.sum(
                    c.terms
                        .iter()
                        .zip(&terms)
                        .map(|(&(m, r), &(_, u))| ring.scalar(m, ring.mul(r, u))),
                );
                if lhs != rhs || verify_certificate(t, &terms, &s.inner, &s.group, &c).is_err() {
                    bad.push(format!("{}: orbit certificate", inst.id));
                }
            }
            SymmetrizeOutcome::HypothesisFailure { .. } => runtime_failures += 1,
        }
        if ring.is_unit(ring.from_int(s.group.order() as u64)) {
            full_expected += 1;
            match symmetrize_representation(t, &terms, &s.inner, &s.group, SymmetrizeMode::FullGroup).unwrap() {
                SymmetrizeOutcome::Certificate(c) if c.multiplier == s.group.order() as u64 => full += 1,
                _ => bad.push(format!("{}: full-group certificate", inst.id)),
            }
        }
    }
    let ok = bad.len() == EXACT && certs + runtime_failures == 100 && full == full_expected;
    line(
        "AC6",
        ok,
        format!("100 trials: {certs} orbit certificates, {runtime_failures} runtime-zero, {full}/{full_expected} full-group, {bad:?}"),
    );
    assert!(ok);
}

#[test]
fn ac7_funcfield_suite() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut bad = Vec::new();
    for (inst, f) in func_settings() {
        let d = f.group.order() as i64;
        if !valuation_axioms_check(&f.dvr, 1000, 0).holds {
            bad.push(format!("{}: valuation axioms", inst.id));
        }
        let samples = fixed_samples(&f.dvr, &f.group, f.span, 16, 0).unwrap();
        let r = valuation_pair_fixed_check(&f.dvr, &f.group, &samples).unwrap();
        if r.observed_value_group != d || !r.holds() {
            bad.push(format!("{}: value group {} vs {d}", inst.id, r.observed_value_group));
        }
        for t in [TheoremId::Lemma34Witness, TheoremId::Lemma31, TheoremId::Prop35, TheoremId::Thm36] {
            let v = verify(t, &inst, 0, &limits).unwrap();
            if v.status != Status::Pass || v.confidence != Confidence::Probes {
                bad.push(format!("{}: {t} {}", inst.id, v.status));
            }
        }
    }
    let ok = bad.len() == EXACT && within("AC7", start, Duration::from_secs(10));
    line("AC7", ok, format!("p = 5, a = 2 and p = 7, a = 3, {bad:?}"));
    assert!(ok);
}

#[test]
fn ac8_section_four_suite() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut bad = Vec::new();
    let (mut inc, mut filters) = (0, 0);
    for (inst, s) in finite_settings() {
        if s.fixed_inner.is_none() {
            continue;
        }
        let v = verify(TheoremId::Prop41, &inst, 0, &limits).unwrap();
        if v.status != Status::Pass {
            bad.push(format!("{}: prop_4_1 {}", inst.id, v.status));
        }
        let filter = extension_filter(&s.inner, &s.outer, &limits).unwrap();
        if filter.len() != 1 || filter[0].members() != s.inner.members() {
            bad.push(format!("{}: filter is not {{R}}", inst.id));
        }
        filters += 1;
        if verify(TheoremId::Lemma46, &inst, 0, &limits).unwrap().status != Status::Pass {
            bad.push(format!("{}: lemma_4_6", inst.id));
        }
        if s.ring.order() <= 64 {
            inc += 1;
            let v = verify(TheoremId::Prop49, &inst, 0, &limits).unwrap();
            if v.status != Status::Pass {
                bad.push(format!("{}: prop_4_9 {}", inst.id, v.status));
            }
        }
    }
    let mut refuted = 0;
    let mut certificates = 0;
    for (inst, f) in func_settings() {
        let samples = fixed_samples(&f.dvr, &f.group, f.span, 16, 0).unwrap();
        let negative = samples.iter().filter(|t| f.dvr.valuation(t).is_some_and(|x| x < 0)).count();
        let ob = integrally_closed_fixed_check(&f.dvr, &f.group, &samples, 4, 0).unwrap();
        if !ob.holds || ob.refuted != negative {
            bad.push(format!("{}: obstruction on {}/{negative}", inst.id, ob.refuted));
        }
        let pl = perfect_localization_fixed_check(&f.dvr, &f.group, &samples).unwrap();
        if !pl.holds || pl.certificates.len() != negative {
            bad.push(format!("{}: {} inverse certificates for {negative}", inst.id, pl.certificates.len()));
        }
        refuted += ob.refuted;
        certificates += pl.certificates.len();
        if verify(TheoremId::Thm47, &inst, 0, &limits).unwrap().status != Status::Pass {
            bad.push(format!("{}: thm_4_7", inst.id));
        }
    }
    let ok = bad.len() == EXACT && inc > 0 && within("AC8", start, Duration::from_secs(30));
    line(
        "AC8",
        ok,
        format!("{filters} filters = {{R}}, {inc} INC enumerations, {refuted} obstructions, {certificates} inverse certificates, {bad:?}"),
    );
    assert!(ok);
}

#[test]
fn ac9_determinism() {
    let limits = Limits::default();
    let a = run_all(0, &limits).unwrap().to_json();
    let b = run_all(0, &limits).unwrap().to_json();
    let ok = a == b && !run_all(0, &limits).unwrap().has_failures();
    line("AC9", ok, format!("{} report bytes", a.len()));
    assert!(ok);
}
