use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::action::{
    char_divides_orbit, fixed_quotient_iso_check, invariance_witness, orbit, symmetrize_representation,
    SymmetrizeMode, SymmetrizeOutcome,
};
use crate::check::{all_hold, Check};
use crate::error::{Result, RingError};
use crate::extend::{
    classify_extension, critical_ideal, extension_filter, filter_contraction_check, gabriel_axioms,
    inc_pair_check, is_integral_extension, is_integrally_closed, is_minimal_extension,
    is_perfect_localization, monic_search, normal_pair_check, ExtensionKind,
};
use crate::funcfield::{
    critical_ideal_witness, filter_contraction_probe, fixed_samples, inertia_order,
    integrally_closed_fixed_check, overring_evidence, perfect_localization_base_check,
    perfect_localization_fixed_check, standard_probes, subst_apply, valuation_axioms_check,
    valuation_pair_fixed_check, NormalPairVerdict, RationalFunction, SubstAction,
};
use crate::harness::catalog::catalog;
use crate::harness::instance::{FiniteSetting, FuncSetting, Instance, Setting, COLLAPSE_TAG};
use crate::harness::verdict::{Confidence, Report, Status, TheoremId, Verdict};
use crate::ideals::{conductor, ideal_image, max_ideals, spec, Ideal};
use crate::ring::{Limits, SubringHandle};

type Witnesses = BTreeMap<String, Value>;

/// Random sample pairs for the valuation axioms.
const AXIOM_PAIRS: usize = 1000;
/// Extra random norms added to the fixed probe set.
const EXTRA_SAMPLES: usize = 16;
/// Seeded symmetrization trials per verdict.
const SYMMETRIZATION_TRIALS: usize = 25;
const OBSTRUCTION_DEGREE: usize = 4;

/// Stable per-instance seed: the run seed mixed with an FNV-1a hash of the id.
pub fn instance_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

#[derive(Default)]
struct Out {
    conclusions: Vec<Check>,
    witnesses: Witnesses,
    inconclusive: Option<String>,
}

struct Draft {
    hyps: Vec<Check>,
    out: Out,
}

impl Draft {
    fn new(hyps: Vec<Check>) -> Self {
        Self { hyps, out: Out::default() }
    }

    fn witness(mut self, key: &str, value: Value) -> Self {
        self.out.witnesses.insert(key.into(), value);
        self
    }

    /// Runs `f` only when every hypothesis holds.
    fn conclude(mut self, f: impl FnOnce(&mut Out) -> Result<()>) -> Result<Self> {
        if !all_hold(&self.hyps) {
            return Ok(self);
        }
        match f(&mut self.out) {
            Ok(()) => {}
            Err(e @ RingError::Incompatible(_)) => return Err(e),
            Err(e @ RingError::CapExceeded { .. }) => self.out.inconclusive = Some(e.to_string()),
            Err(e) => self
                .out
                .conclusions
                .push(Check::new("conclusion computed without error", false, e.to_string())),
        }
        Ok(self)
    }
}

fn finish(theorem: TheoremId, id: &str, confidence: Confidence, draft: Draft, start: Instant) -> Verdict {
    let Draft { hyps, mut out } = draft;
    let first_hyp = hyps.iter().find(|c| !c.holds).cloned();
    let first_concl = out.conclusions.iter().find(|c| !c.holds).cloned();
    let (status, first_failing) = if first_hyp.is_some() {
        (Status::HypothesisViolation, first_hyp)
    } else if let Some(reason) = out.inconclusive.take() {
        out.witnesses.insert("inconclusive".into(), json!(reason));
        (Status::Inconclusive, None)
    } else if first_concl.is_some() {
        (Status::Fail, first_concl)
    } else {
        (Status::Pass, None)
    };
    Verdict {
        theorem,
        instance: id.to_string(),
        status,
        confidence,
        hypotheses: hyps,
        conclusions: out.conclusions,
        first_failing,
        witnesses: out.witnesses,
        runtime: start.elapsed(),
    }
}

/// Materializes the instance and runs one checker.
pub fn verify(theorem: TheoremId, instance: &Instance, seed: u64, limits: &Limits) -> Result<Verdict> {
    check_compatible(theorem, instance)?;
    let setting = instance.materialize(limits)?;
    verify_setting(theorem, instance, &setting, seed, limits)
}

fn check_compatible(theorem: TheoremId, instance: &Instance) -> Result<()> {
    if !theorem.setting().accepts(instance.is_funcfield()) {
        return Err(RingError::Incompatible(format!(
            "{theorem} does not apply to {} instance '{}'",
            if instance.is_funcfield() { "a funcfield" } else { "a finite" },
            instance.id
        )));
    }
    if theorem == TheoremId::Example28 && !instance.has_tag(COLLAPSE_TAG) {
        return Err(RingError::Incompatible(format!(
            "example_2_8 runs on instances tagged {COLLAPSE_TAG}"
        )));
    }
    Ok(())
}

/// Runs one checker on an already materialized setting. Checker errors
/// become FAIL or INCONCLUSIVE verdicts; only setting mismatches are `Err`.
pub fn verify_setting(
    theorem: TheoremId,
    instance: &Instance,
    setting: &Setting,
    seed: u64,
    limits: &Limits,
) -> Result<Verdict> {
    check_compatible(theorem, instance)?;
    let start = Instant::now();
    let seed = instance_seed(seed, &instance.id);
    let (confidence, drafted) = match setting {
        Setting::Finite(s) => (Confidence::Exhaustive, finite(theorem, instance, s, seed, limits)),
        Setting::Func(f) => (Confidence::Probes, func(theorem, f, seed)),
    };
    let draft = match drafted {
        Ok(d) => d,
        Err(e @ RingError::Incompatible(_)) => return Err(e),
        Err(e @ RingError::CapExceeded { .. }) => {
            let mut d = Draft::new(vec![]);
            d.out.inconclusive = Some(e.to_string());
            d
        }
        Err(e) => {
            let mut d = Draft::new(vec![]);
            d.out
                .conclusions
                .push(Check::new("checker ran without error", false, e.to_string()));
            d
        }
    };
    Ok(finish(theorem, &instance.id, confidence, draft, start))
}

/// Every compatible checker on one instance, in theorem order.
pub fn run_instance(instance: &Instance, theorems: &[TheoremId], seed: u64, limits: &Limits) -> Result<Vec<Verdict>> {
    let setting = instance.materialize(limits)?;
    let mut out = Vec::new();
    for &t in theorems {
        match verify_setting(t, instance, &setting, seed, limits) {
            Ok(v) => out.push(v),
            Err(RingError::Incompatible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The whole catalog against every checker, instances in parallel and
/// merged in id order.
pub fn run_all(seed: u64, limits: &Limits) -> Result<Report> {
    let per_instance: Vec<Result<Vec<Verdict>>> = catalog()
        .par_iter()
        .map(|inst| run_instance(inst, TheoremId::ALL, seed, limits))
        .collect();
    let mut verdicts = Vec::new();
    for r in per_instance {
        verdicts.extend(r?);
    }
    Ok(Report::new(seed, verdicts))
}

fn labels(ideal: &Ideal) -> Value {
    json!(ideal.labels())
}

// ---------------------------------------------------------------- finite

fn h_invariant(s: &FiniteSetting) -> Check {
    let detail = invariance_witness(s.inner.members(), &s.group)
        .map(|(x, y)| format!("{} moves to {} outside R", s.ring.label(x), s.ring.label(y)))
        .unwrap_or_default();
    Check::new("R is G-invariant", s.fixed_inner.is_some(), detail)
}

fn h_locally_finite(s: &FiniteSetting) -> Check {
    Check::new("G is locally finite", true, format!("|G| = {}", s.group.order()))
}

fn h_strongly_locally_finite(s: &FiniteSetting) -> Check {
    Check::new("G is strongly locally finite", true, format!("|G| = {}", s.group.order()))
}

fn not_evaluable(name: &str) -> Check {
    Check::new(name, false, "needs R^G, which requires invariance")
}

fn h_distinct(s: &FiniteSetting) -> Check {
    let name = "R^G ≠ T^G";
    match &s.fixed_inner {
        Some(rg) => Check::new(name, rg != &s.fixed_outer, format!("|R^G| = {}, |T^G| = {}", rg.len(), s.fixed_outer.len())),
        None => not_evaluable(name),
    }
}

fn rg(s: &FiniteSetting) -> Result<&SubringHandle> {
    s.fixed_inner
        .as_ref()
        .ok_or_else(|| RingError::NotInvariant("R".into()))
}

/// `(R :_R T)` and whether it is maximal in `R`.
fn crucial(s: &FiniteSetting) -> Result<(Ideal, Check)> {
    let m = conductor(&s.inner, &s.outer)?;
    let c = Check::new(
        "M = (R :_R T) is maximal in R",
        m.is_maximal(),
        format!("M = {:?}", m.labels()),
    );
    Ok((m, c))
}

fn h_unit_order(s: &FiniteSetting) -> (Check, bool) {
    let n = s.ring.from_int(s.group.order() as u64);
    let unit = s.ring.is_unit(n);
    (
        Check::new("G is finite and |G| is a unit in R", unit, format!("|G| = {}", s.group.order())),
        unit,
    )
}

fn h_integral_minimal(s: &FiniteSetting, limits: &Limits) -> Result<(Check, ExtensionKind)> {
    let kind = classify_extension(&s.inner, &s.outer, limits)?.kind;
    let holds = matches!(
        kind,
        ExtensionKind::MinimalInert | ExtensionKind::MinimalDecomposed | ExtensionKind::MinimalRamified
    );
    Ok((Check::new("R ⊂ T is an integral minimal extension", holds, kind.to_string()), kind))
}

fn h_minimal(s: &FiniteSetting) -> Result<Check> {
    Ok(Check::new("R ⊂ T is minimal", is_minimal_extension(&s.inner, &s.outer)?, ""))
}

fn h_critical(s: &FiniteSetting) -> Result<(Check, Option<Ideal>)> {
    let p = critical_ideal(&s.inner, &s.outer)?;
    let detail = p.as_ref().map(|p| format!("P = {:?}", p.labels())).unwrap_or_default();
    Ok((Check::new("R ⊂ T has a critical ideal", p.is_some(), detail), p))
}

/// Coefficients of `Π_{s ∈ orbit} (x − s)`, constant term first.
fn orbit_polynomial(s: &FiniteSetting, t: usize) -> Vec<usize> {
    let ring = &s.ring;
    let mut coeffs = vec![ring.one()];
    for x in orbit(t, &s.group).members {
        let mut next = vec![ring.zero(); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = ring.add(next[i + 1], c);
            next[i] = ring.sub(next[i], ring.mul(x, c));
        }
        coeffs = next;
    }
    coeffs
}

/// A seeded `t = Σ r_i u_i` with `t` fixed and nonzero, `u_i ∈ T^G`, `r_i ∈ R`.
/// Half the draws sum one `u` against a whole orbit of some `r`, so the
/// coefficients are typically not fixed.
pub fn random_representation(s: &FiniteSetting, rng: &mut impl Rng) -> Option<(usize, Vec<(usize, usize)>)> {
    let ring = &s.ring;
    let inner: Vec<usize> = s.inner.iter().collect();
    let fixed: Vec<usize> = s.fixed_outer.iter().collect();
    for _ in 0..256 {
        let terms: Vec<(usize, usize)> = if rng.gen_bool(0.5) {
            let r = inner[rng.gen_range(0..inner.len())];
            let u = fixed[rng.gen_range(0..fixed.len())];
            orbit(r, &s.group).members.into_iter().map(|x| (x, u)).collect()
        } else {
            (0..rng.gen_range(1..=3))
                .map(|_| (inner[rng.gen_range(0..inner.len())], fixed[rng.gen_range(0..fixed.len())]))
                .collect()
        };
        let t = ring.sum(terms.iter().map(|&(r, u)| ring.mul(r, u)));
        if t != ring.zero() && s.group.fixes(t) {
            return Some((t, terms));
        }
    }
    None
}

fn finite(theorem: TheoremId, inst: &Instance, s: &FiniteSetting, seed: u64, limits: &Limits) -> Result<Draft> {
    use TheoremId::*;
    let ring = &s.ring;
    let tg = &s.fixed_outer;
    match theorem {
        Lemma21 => Draft::new(vec![h_locally_finite(s)]).conclude(|out| {
            let mut searched = None;
            let mut orbit_poly = None;
            let mut max_orbit = 0;
            for t in s.outer.iter() {
                let n = orbit(t, &s.group).size;
                max_orbit = max_orbit.max(n);
                match monic_search(tg, t, n + 1) {
                    Some(w) if w.holds(ring) && w.lower.iter().all(|&c| tg.contains(c)) => {
                        if n == max_orbit {
                            out.witnesses.insert("sample_witness".into(), json!({
                                "t": ring.label(t), "n_t": n, "polynomial": w.display(ring)
                            }));
                        }
                    }
                    _ => {
                        searched.get_or_insert(format!("no witness for {}", ring.label(t)));
                    }
                }
                let coeffs = orbit_polynomial(s, t);
                if !coeffs.iter().all(|&c| tg.contains(c)) {
                    orbit_poly.get_or_insert(format!("at {}", ring.label(t)));
                }
            }
            out.witnesses.insert("max_orbit_size".into(), json!(max_orbit));
            out.conclusions = vec![
                Check::new(
                    "every t has a monic witness over T^G of degree ≤ n_t + 1",
                    searched.is_none(),
                    searched.unwrap_or_default(),
                ),
                Check::new(
                    "the orbit polynomial of every t has coefficients in T^G",
                    orbit_poly.is_none(),
                    orbit_poly.unwrap_or_default(),
                ),
            ];
            Ok(())
        }),
        Lemma22a => {
            let (m, cm) = crucial(s)?;
            Draft::new(vec![h_invariant(s), h_locally_finite(s), cm, h_distinct(s)]).conclude(|out| {
                let rg = rg(s)?;
                let fixed_conductor = conductor(rg, tg)?;
                let small = m.contract(rg)?;
                let over_tg: Vec<usize> = m.members().iter().copied().filter(|&x| tg.contains(x)).collect();
                out.witnesses.insert("M".into(), labels(&m));
                out.witnesses.insert("fixed_conductor".into(), labels(&fixed_conductor));
                out.conclusions = vec![
                    Check::new(
                        "(R^G :_{R^G} T^G) = M ∩ R^G",
                        fixed_conductor.members() == small.members(),
                        format!("{:?} vs {:?}", fixed_conductor.labels(), small.labels()),
                    ),
                    Check::new(
                        "M ∩ R^G = M ∩ T^G",
                        over_tg.iter().copied().eq(small.members().iter().copied()),
                        "",
                    ),
                ];
                Ok(())
            })
        }
        Lemma22b => {
            let (m, cm) = crucial(s)?;
            Draft::new(vec![h_invariant(s), h_locally_finite(s), cm]).conclude(|out| {
                let mut moved = None;
                for g in s.group.members() {
                    let img = ideal_image(g, &m)?;
                    if img != m {
                        moved = Some(format!("image {:?}", img.labels()));
                        break;
                    }
                }
                out.witnesses.insert("M".into(), labels(&m));
                out.conclusions = vec![Check::new(
                    "the orbit of M is {M}",
                    moved.is_none(),
                    moved.unwrap_or_default(),
                )];
                Ok(())
            })
        }
        Lemma22c => {
            let (m, cm) = crucial(s)?;
            Draft::new(vec![h_invariant(s), h_locally_finite(s), cm]).conclude(|out| {
                let mut over = 0;
                let mut bad = None;
                for n in spec(&s.outer, limits)? {
                    if m.members().is_subset(n.members()) {
                        over += 1;
                        if n.contract(&s.inner)? != m {
                            bad.get_or_insert(format!("N = {:?}", n.labels()));
                        }
                    }
                }
                out.witnesses.insert("primes_over_M".into(), json!(over));
                out.conclusions = vec![Check::new(
                    "every prime N of T containing M satisfies N ∩ R = M",
                    bad.is_none(),
                    bad.unwrap_or_default(),
                )];
                Ok(())
            })
        }
        Prop23 => {
            let (cond, _) = crucial(s)?;
            let m = if cond.is_maximal() {
                cond
            } else {
                max_ideals(&s.inner, limits)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| RingError::Inconsistent("R has no maximal ideal".into()))?
            };
            let mut hyps = vec![h_invariant(s), h_locally_finite(s)];
            let report = match &s.fixed_inner {
                Some(_) => {
                    let r = fixed_quotient_iso_check(&s.inner, &m, &s.group, limits)?;
                    hyps.extend(r.hypotheses.iter().cloned());
                    Some(r)
                }
                None => None,
            };
            Draft::new(hyps).witness("M", labels(&m)).conclude(|out| {
                let r = report.expect("invariant");
                out.conclusions = r.conclusions;
                out.witnesses.insert("witness_map".into(), json!(r.witness_map));
                Ok(())
            })
        }
        Lemma24 => {
            let n = s.group.order() as u64;
            let unit_in_t = ring.is_unit(ring.from_int(n));
            let domain = ring.is_field()
                && s.outer.iter().all(|t| !(orbit(t, &s.group).size as u64).is_multiple_of(ring.characteristic()));
            Draft::new(vec![
                h_invariant(s),
                h_locally_finite(s),
                Check::new(
                    "T is a domain with char(T) dividing no n_t, or |G| is a unit in T",
                    domain || unit_in_t,
                    format!("domain condition {domain}, |G| unit {unit_in_t}"),
                ),
            ])
            .conclude(|out| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (mut certs, mut hyp_fail, mut full) = (0, 0, 0);
                let mut first = None;
                for _ in 0..SYMMETRIZATION_TRIALS {
                    let Some((t, terms)) = random_representation(s, &mut rng) else {
                        return Err(RingError::Invalid("no fixed nonzero sums found".into()));
                    };
                    match symmetrize_representation(t, &terms, &s.inner, &s.group, SymmetrizeMode::Orbit)? {
                        SymmetrizeOutcome::Certificate(c) => {
                            certs += 1;
                            first.get_or_insert(json!({"t": ring.label(t), "certificate": c}));
                        }
                        SymmetrizeOutcome::HypothesisFailure { .. } => hyp_fail += 1,
                    }
                    if unit_in_t {
                        match symmetrize_representation(t, &terms, &s.inner, &s.group, SymmetrizeMode::FullGroup)? {
                            SymmetrizeOutcome::Certificate(_) => full += 1,
                            SymmetrizeOutcome::HypothesisFailure { reason, .. } => {
                                return Err(RingError::Inconsistent(format!("full-group mode: {reason}")))
                            }
                        }
                    }
                }
                out.witnesses.insert("trials".into(), json!(SYMMETRIZATION_TRIALS));
                out.witnesses.insert("orbit_certificates".into(), json!(certs));
                out.witnesses.insert("orbit_runtime_nonzero_failures".into(), json!(hyp_fail));
                out.witnesses.insert("full_group_certificates".into(), json!(full));
                if let Some(f) = first {
                    out.witnesses.insert("first_certificate".into(), f);
                }
                out.conclusions = vec![
                    Check::new(
                        "orbit-mode certificates replay through the tables",
                        certs > 0 && (domain || certs + hyp_fail == SYMMETRIZATION_TRIALS),
                        format!("{certs} certificates"),
                    ),
                    Check::new(
                        "full-group certificates replay when |G| is a unit",
                        !unit_in_t || full == SYMMETRIZATION_TRIALS,
                        format!("{full} certificates"),
                    ),
                ];
                Ok(())
            })
        }
        Thm25Consistency => Draft::new(vec![Check::new("R ⊊ T", s.inner != s.outer, "")]).conclude(|out| {
            let report = classify_extension(&s.inner, &s.outer, limits)?;
            let oracle = is_minimal_extension(&s.inner, &s.outer)?;
            out.witnesses.insert("kind".into(), json!(report.kind));
            out.witnesses.insert("witness_ideals".into(), json!(report.witnesses));
            out.conclusions.push(Check::new(
                "classification agrees with the minimality oracle",
                report.kind.is_minimal() == oracle,
                format!("{} vs oracle {oracle}", report.kind),
            ));
            if let Some(e) = inst.expected {
                out.conclusions.push(Check::new(
                    "classification matches the expected kind",
                    report.kind == e,
                    format!("{} vs {e}", report.kind),
                ));
            }
            if let Some(rg) = &s.fixed_inner {
                if rg != tg {
                    let fixed = classify_extension(rg, tg, limits)?;
                    let oracle = is_minimal_extension(rg, tg)?;
                    out.witnesses.insert("fixed_kind".into(), json!(fixed.kind));
                    out.conclusions.push(Check::new(
                        "fixed-level classification agrees with the minimality oracle",
                        fixed.kind.is_minimal() == oracle,
                        format!("{} vs oracle {oracle}", fixed.kind),
                    ));
                }
            }
            Ok(())
        }),
        Thm26 => {
            let (hk, kind) = h_integral_minimal(s, limits)?;
            let (m, _) = crucial(s)?;
            let char_name = "char(R^G/(M ∩ T^G)) divides no orbit size n_r";
            let hc = match &s.fixed_inner {
                Some(rg) if m.is_maximal() => {
                    let small = m.contract(rg)?;
                    let (ch, bad) = char_divides_orbit(&s.inner, &small, &s.group)?;
                    let detail = match bad {
                        Some((r, n)) => format!("char {ch} divides n_r = {n} at r = {}", ring.label(r)),
                        None => format!("char {ch}"),
                    };
                    Check::new(char_name, bad.is_none(), detail)
                }
                Some(_) => Check::new(char_name, false, "M is not maximal"),
                None => not_evaluable(char_name),
            };
            Draft::new(vec![h_invariant(s), h_locally_finite(s), hk, h_distinct(s), hc]).conclude(|out| {
                let rg = rg(s)?;
                let fixed = classify_extension(rg, tg, limits)?;
                let fixed_conductor = conductor(rg, tg)?;
                let small = m.contract(rg)?;
                out.witnesses.insert("kind".into(), json!(kind));
                out.witnesses.insert("fixed_kind".into(), json!(fixed.kind));
                out.witnesses.insert("fixed_conductor".into(), labels(&fixed_conductor));
                out.witnesses.insert("fixed_witness_ideals".into(), json!(fixed.witnesses));
                let crucial_ok = fixed.crucial_max.as_ref() == Some(&fixed_conductor);
                out.conclusions = vec![
                    Check::new(
                        "R^G ⊂ T^G is a minimal extension of the same type",
                        fixed.kind == kind,
                        format!("{kind} vs {}", fixed.kind),
                    ),
                    Check::new("its crucial maximal ideal is (R^G :_{R^G} T^G)", crucial_ok, ""),
                    Check::new(
                        "(R^G :_{R^G} T^G) = M ∩ R^G",
                        fixed_conductor.members() == small.members(),
                        "",
                    ),
                ];
                Ok(())
            })
        }
        Example28 => Draft::new(vec![
            h_invariant(s),
            h_minimal(s)?,
            Check::new("G is nontrivial", s.group.order() > 1, format!("|G| = {}", s.group.order())),
        ])
        .conclude(|out| {
            let rg = rg(s)?;
            let fixed = classify_extension(rg, tg, limits)?;
            out.witnesses.insert("fixed_ring".into(), json!(rg.labels()));
            out.conclusions = vec![
                Check::new("R^G = T^G", rg == tg, format!("|R^G| = {}, |T^G| = {}", rg.len(), tg.len())),
                Check::new(
                    "R^G ⊂ T^G classifies TrivialEqual",
                    fixed.kind == ExtensionKind::TrivialEqual,
                    fixed.kind.to_string(),
                ),
            ];
            Ok(())
        }),
        Lemma31 => {
            let (hc, p) = h_critical(s)?;
            Draft::new(vec![h_invariant(s), h_locally_finite(s), hc, h_distinct(s)]).conclude(|out| {
                let p = p.expect("critical ideal exists");
                let rg = rg(s)?;
                let fixed = critical_ideal(rg, tg)?;
                let small = p.contract(rg)?;
                out.witnesses.insert("P".into(), labels(&p));
                out.witnesses.insert("P_cap_RG".into(), labels(&small));
                out.conclusions = vec![Check::new(
                    "the critical ideal of R^G ⊂ T^G is P ∩ R^G",
                    fixed.as_ref() == Some(&small),
                    fixed.map(|f| format!("{:?}", f.labels())).unwrap_or_else(|| "none".into()),
                )];
                Ok(())
            })
        }
        Lemma32 => {
            let (hc, p) = h_critical(s)?;
            Draft::new(vec![h_invariant(s), h_locally_finite(s), hc]).conclude(|out| {
                let p = p.expect("critical ideal exists");
                let mut moved = None;
                for g in s.group.members() {
                    let img = ideal_image(g, &p)?;
                    if img != p {
                        moved = Some(format!("image {:?}", img.labels()));
                        break;
                    }
                }
                out.witnesses.insert("P".into(), labels(&p));
                out.witnesses.insert("P_is_maximal".into(), json!(p.is_maximal()));
                out.conclusions = vec![Check::new(
                    "σ(P) = P for every σ ∈ G",
                    moved.is_none(),
                    moved.unwrap_or_default(),
                )];
                Ok(())
            })
        }
        Prop41 => {
            let base = is_integral_extension(&s.inner, &s.outer, 3)?;
            Draft::new(vec![
                h_invariant(s),
                h_locally_finite(s),
                Check::new("T is integral over R", base.integral, ""),
            ])
            .conclude(|out| {
                let rg = rg(s)?;
                let report = is_integral_extension(rg, tg, 4)?;
                let searched = report.witnesses.iter().filter(|w| !w.fallback).count();
                out.witnesses.insert("searched_witnesses".into(), json!(searched));
                out.witnesses.insert("fallback_witnesses".into(), json!(report.witnesses.len() - searched));
                if let Some(w) = report.witnesses.iter().max_by_key(|w| (w.degree(), w.element)) {
                    out.witnesses.insert("sample_witness".into(), json!({
                        "t": ring.label(w.element), "polynomial": w.display(ring)
                    }));
                }
                out.conclusions = vec![Check::new(
                    "T^G is integral over R^G",
                    report.integral,
                    format!("{} monic witnesses replayed", report.witnesses.len()),
                )];
                Ok(())
            })
        }
        Prop42 => Draft::new(vec![
            h_invariant(s),
            Check::new("R is integrally closed in T", is_integrally_closed(&s.inner, &s.outer)?, ""),
        ])
        .conclude(|out| {
            out.conclusions = vec![Check::new(
                "R^G is integrally closed in T^G",
                is_integrally_closed(rg(s)?, tg)?,
                "",
            )];
            Ok(())
        }),
        Prop43 | Cor44 => {
            let (hu, _) = h_unit_order(s);
            let unit_in_t = ring.is_unit(ring.from_int(s.group.order() as u64));
            let (hk, kind) = h_integral_minimal(s, limits)?;
            let hmin = if theorem == Cor44 { hk } else { h_minimal(s)? };
            Draft::new(vec![h_invariant(s), hmin, hu, h_distinct(s)])
                .witness("unit_in_R", json!(s.ring.is_unit(ring.from_int(s.group.order() as u64))))
                .witness("unit_in_T", json!(unit_in_t))
                .conclude(|out| {
                    let rg = rg(s)?;
                    if theorem == Prop43 {
                        out.conclusions = vec![Check::new("R^G ⊂ T^G is minimal", is_minimal_extension(rg, tg)?, "")];
                    } else {
                        let fixed = classify_extension(rg, tg, limits)?.kind;
                        out.witnesses.insert("kind".into(), json!(kind));
                        out.witnesses.insert("fixed_kind".into(), json!(fixed));
                        out.conclusions = vec![Check::new(
                            "R^G ⊂ T^G is an integral minimal extension",
                            matches!(
                                fixed,
                                ExtensionKind::MinimalInert
                                    | ExtensionKind::MinimalDecomposed
                                    | ExtensionKind::MinimalRamified
                            ),
                            fixed.to_string(),
                        )];
                    }
                    Ok(())
                })
        }
        Lemma46 => Draft::new(vec![h_invariant(s), h_strongly_locally_finite(s)]).conclude(|out| {
            let filter = extension_filter(&s.inner, &s.outer, limits)?;
            out.witnesses.insert("filter".into(), json!(filter));
            out.conclusions = vec![filter_contraction_check(&s.inner, &s.outer, &s.group, limits)?];
            Ok(())
        }),
        Thm47 => Draft::new(vec![
            h_invariant(s),
            h_strongly_locally_finite(s),
            Check::new(
                "T is a perfect localization of R",
                is_perfect_localization(&s.inner, &s.outer)?,
                "",
            ),
        ])
        .conclude(|out| {
            let rg = rg(s)?;
            let filter = extension_filter(rg, tg, limits)?;
            let mut checks: Vec<Check> = gabriel_axioms(rg, &filter, limits)?
                .into_iter()
                .map(|c| Check::new(format!("fixed filter: {}", c.name), c.holds, c.detail))
                .collect();
            checks.push(Check::new(
                "T^G is a perfect localization of R^G",
                is_perfect_localization(rg, tg)?,
                "",
            ));
            out.witnesses.insert("fixed_filter".into(), json!(filter));
            out.conclusions = checks;
            Ok(())
        }),
        Prop49 => {
            let h = inc_pair_check(&s.inner, &s.outer, limits)?;
            Draft::new(vec![
                h_invariant(s),
                h_locally_finite(s),
                Check::new("(R, T) is an INC-pair", h.holds, h.detail),
            ])
            .conclude(|out| {
                let c = inc_pair_check(rg(s)?, tg, limits)?;
                out.conclusions = vec![Check::new("(R^G, T^G) is an INC-pair", c.holds, c.detail)];
                Ok(())
            })
        }
        Cor410 => {
            let h = normal_pair_check(&s.inner, &s.outer, limits)?;
            Draft::new(vec![
                h_invariant(s),
                h_locally_finite(s),
                Check::new("(R, T) is a normal pair", h.holds, h.detail),
            ])
            .conclude(|out| {
                let c = normal_pair_check(rg(s)?, tg, limits)?;
                out.conclusions = vec![Check::new("(R^G, T^G) is a normal pair", c.holds, c.detail)];
                Ok(())
            })
        }
        Lemma34Witness | Prop35 | Thm36 => Err(RingError::Incompatible(format!(
            "{theorem} needs a funcfield instance"
        ))),
    }
}

// ------------------------------------------------------------- funcfield

struct Probes {
    base: Vec<RationalFunction>,
    fixed: Vec<RationalFunction>,
    /// `N(f)^{-1}`.
    inv_norm: RationalFunction,
}

fn probes(f: &FuncSetting, seed: u64) -> Result<Probes> {
    let trivial = SubstAction::trivial(f.dvr.characteristic())?;
    Ok(Probes {
        base: standard_probes(&f.dvr, &trivial, f.span),
        fixed: fixed_samples(&f.dvr, &f.group, f.span, EXTRA_SAMPLES, seed)?,
        inv_norm: f.group.norm(&f.dvr.uniformizer()).inv()?,
    })
}

fn h_v_invariant(f: &FuncSetting) -> Check {
    Check::new(
        "V is G-invariant",
        crate::funcfield::invariance_check(&f.dvr, &f.group),
        format!("center {}", f.dvr.center()),
    )
}

fn h_v_distinct(f: &FuncSetting, pr: &Probes) -> Check {
    let t = &pr.inv_norm;
    Check::new(
        "R^G ≠ T^G",
        crate::funcfield::fixed_membership(&f.group, t) && !f.dvr.contains(t),
        format!("witness {t}"),
    )
}

fn h_v_critical(f: &FuncSetting, pr: &Probes) -> Result<Check> {
    let t = f.dvr.uniformizer().inv()?;
    let r = critical_ideal_witness(&f.dvr, &t, &pr.base)?;
    Ok(Check::new(
        "V ⊂ K has a critical ideal, namely m",
        r.agree,
        r.first_disagreement.unwrap_or_default(),
    ))
}

/// `V ⊂ K` integrally closed and minimal, on the unfixed probes.
fn h_v_closed_minimal(f: &FuncSetting, pr: &Probes, seed: u64) -> Result<Vec<Check>> {
    let trivial = SubstAction::trivial(f.dvr.characteristic())?;
    let ev = overring_evidence(&f.dvr, &trivial, &pr.base);
    let ob = integrally_closed_fixed_check(&f.dvr, &trivial, &pr.base, OBSTRUCTION_DEGREE, seed)?;
    Ok(vec![
        Check::new("V ⊂ K is minimal", ev.holds, ev.detail),
        Check::new("V is integrally closed in K", ob.holds, ob.failure.unwrap_or_default()),
    ])
}

fn orbit_fixity(f: &FuncSetting, pr: &Probes) -> Check {
    let bad = f.group.members().iter().find_map(|g| {
        pr.base
            .iter()
            .chain(&pr.fixed)
            .find(|r| f.dvr.in_maximal_ideal(r) != f.dvr.in_maximal_ideal(&subst_apply(g, r)))
            .map(|r| format!("x -> {}x+{} at {r}", g.a, g.b))
    });
    Check::new("σ(m) = m for every σ ∈ G on the probes", bad.is_none(), bad.unwrap_or_default())
}

fn fixed_critical(f: &FuncSetting, pr: &Probes) -> Result<Check> {
    let r = critical_ideal_witness(&f.dvr, &pr.inv_norm, &pr.fixed)?;
    Ok(Check::new(
        "the critical ideal of V^G ⊂ K^G is m ∩ V^G",
        r.agree,
        r.first_disagreement.unwrap_or_default(),
    ))
}

fn func(theorem: TheoremId, f: &FuncSetting, seed: u64) -> Result<Draft> {
    use TheoremId::*;
    let invariant = crate::funcfield::invariance_check(&f.dvr, &f.group);
    if invariant && inertia_order(&f.dvr, &f.group) != f.group.order() {
        return Err(RingError::Incompatible(
            "the center must be totally ramified under the action".into(),
        ));
    }
    let pr = probes(f, seed)?;
    let v = &f.dvr;
    let g = &f.group;
    let lf = Check::new("G is locally finite", true, format!("|G| = {}", g.order()));
    let d = g.order();
    match theorem {
        Lemma31 => Draft::new(vec![h_v_invariant(f), h_v_critical(f, &pr)?, h_v_distinct(f, &pr)]).conclude(|out| {
            out.witnesses.insert("fixed_probes".into(), json!(pr.fixed.len()));
            out.conclusions = vec![fixed_critical(f, &pr)?];
            Ok(())
        }),
        Lemma32 => Draft::new(vec![h_v_invariant(f), h_v_critical(f, &pr)?]).conclude(|out| {
            out.conclusions = vec![orbit_fixity(f, &pr)];
            Ok(())
        }),
        Lemma34Witness => {
            let fv = v.uniformizer();
            Draft::new(vec![
                Check::new("v(f) = 1 and v(1/f) = -1", v.valuation(&fv) == Some(1) && v.valuation(&fv.inv()?) == Some(-1), ""),
                valuation_axioms_check(v, AXIOM_PAIRS, seed),
            ])
            .conclude(|out| {
                let one = RationalFunction::one(v.characteristic());
                let ts = [fv.inv()?, fv.powi(-2)?, fv.add(&one).div(&fv.powi(3)?)?];
                let mut bad = None;
                for t in &ts {
                    let r = critical_ideal_witness(v, t, &pr.base)?;
                    if !r.agree {
                        bad = Some(format!("t = {t}: {}", r.first_disagreement.unwrap_or_default()));
                        break;
                    }
                }
                let gcd = pr.base.iter().filter_map(|t| v.valuation(t)).fold(0i64, num_gcd);
                out.witnesses.insert("critical_probe_elements".into(), json!(ts.iter().map(|t| t.to_string()).collect::<Vec<_>>()));
                out.witnesses.insert("value_group_generator".into(), json!(gcd));
                out.conclusions = vec![
                    Check::new("the critical ideal exists and equals m", bad.is_none(), bad.unwrap_or_default()),
                    Check::new("the value group has rank one, generated by v(f) = 1", gcd == 1, format!("gcd {gcd}")),
                ];
                Ok(())
            })
        }
        Prop35 => Draft::new(vec![
            h_v_invariant(f),
            h_v_distinct(f, &pr),
            valuation_axioms_check(v, AXIOM_PAIRS, seed),
            Check::new("the orbit of m is {m}", orbit_fixity(f, &pr).holds, ""),
        ])
        .conclude(|out| {
            let r = valuation_pair_fixed_check(v, g, &pr.fixed)?;
            out.witnesses.insert("expected_value_group".into(), json!(r.expected_value_group));
            out.witnesses.insert("observed_value_group".into(), json!(r.observed_value_group));
            out.conclusions = r.checks;
            out.conclusions.push(Check::new(
                "(V^G, m ∩ V^G) has critical ideal m ∩ V^G in K^G",
                r.critical.agree,
                r.critical.first_disagreement.unwrap_or_default(),
            ));
            Ok(())
        }),
        Thm36 => {
            let mut hyps = vec![h_v_invariant(f)];
            hyps.extend(h_v_closed_minimal(f, &pr, seed)?);
            hyps.push(Check::new("G is nontrivial", d > 1, format!("|G| = {d}")));
            Draft::new(hyps).conclude(|out| {
                let r = valuation_pair_fixed_check(v, g, &pr.fixed)?;
                let ob = integrally_closed_fixed_check(v, g, &pr.fixed, OBSTRUCTION_DEGREE, seed)?;
                out.witnesses.insert("value_group".into(), json!(r.observed_value_group));
                out.witnesses.insert("refuted_samples".into(), json!(ob.refuted));
                out.conclusions.push(h_v_distinct(f, &pr));
                out.conclusions.push(fixed_critical(f, &pr)?);
                out.conclusions.push(orbit_fixity(f, &pr));
                out.conclusions.extend(r.checks);
                let ev = overring_evidence(v, g, &pr.fixed);
                out.conclusions.push(Check::new("V^G ⊂ K^G is minimal on the samples", ev.holds, ev.detail));
                out.conclusions.push(Check::new(
                    "V^G is integrally closed in K^G",
                    ob.holds,
                    ob.failure.unwrap_or_default(),
                ));
                Ok(())
            })
        }
        Prop42 => {
            let mut hyps = vec![h_v_invariant(f)];
            hyps.extend(h_v_closed_minimal(f, &pr, seed)?.into_iter().skip(1));
            Draft::new(hyps).conclude(|out| {
                let ob = integrally_closed_fixed_check(v, g, &pr.fixed, OBSTRUCTION_DEGREE, seed)?;
                out.witnesses.insert("refuted_samples".into(), json!(ob.refuted));
                out.witnesses.insert("member_samples".into(), json!(ob.members));
                out.conclusions = vec![Check::new(
                    "V^G is integrally closed in K^G",
                    ob.holds,
                    ob.failure.unwrap_or_default(),
                )];
                Ok(())
            })
        }
        Cor44 => {
            let mut hyps = vec![h_v_invariant(f)];
            hyps.extend(h_v_closed_minimal(f, &pr, seed)?.into_iter().take(1));
            hyps.push(Check::new(
                "G is finite and |G| is a unit in V",
                !(d as u64).is_multiple_of(v.characteristic()),
                format!("|G| = {d}"),
            ));
            hyps.push(h_v_distinct(f, &pr));
            Draft::new(hyps).conclude(|out| {
                let ev = overring_evidence(v, g, &pr.fixed);
                let ob = integrally_closed_fixed_check(v, g, &pr.fixed, OBSTRUCTION_DEGREE, seed)?;
                out.conclusions = vec![
                    Check::new("V^G ⊂ K^G is minimal on the samples", ev.holds, ev.detail),
                    Check::new("V^G is integrally closed in K^G", ob.holds, ob.failure.unwrap_or_default()),
                ];
                Ok(())
            })
        }
        Lemma46 => Draft::new(vec![
            h_v_invariant(f),
            Check::new("G is strongly locally finite", true, format!("|G| = {d}")),
        ])
        .conclude(|out| {
            out.conclusions = vec![filter_contraction_probe(v, g, f.span)?];
            Ok(())
        }),
        Thm47 => Draft::new(vec![
            h_v_invariant(f),
            Check::new("G is strongly locally finite", true, format!("|G| = {d}")),
            perfect_localization_base_check(v, &pr.base),
        ])
        .conclude(|out| {
            let r = perfect_localization_fixed_check(v, g, &pr.fixed)?;
            out.witnesses.insert("inverse_certificates".into(), json!(r.certificates.len()));
            if let Some(c) = r.certificates.first() {
                out.witnesses.insert("first_certificate".into(), json!(c));
            }
            out.conclusions = vec![Check::new(
                "K^G is a perfect localization of V^G on the samples",
                r.holds && !r.certificates.is_empty(),
                r.failure.unwrap_or_default(),
            )];
            Ok(())
        }),
        Cor410 => {
            let closed = h_v_closed_minimal(f, &pr, seed)?;
            let normal = all_hold(&closed);
            Draft::new(vec![
                h_v_invariant(f),
                lf,
                Check::new("(V, K) is a normal pair", normal, ""),
            ])
            .conclude(|out| {
                let seeds: Vec<Vec<RationalFunction>> = pr.fixed.iter().take(8).map(|t| vec![t.clone()]).collect();
                match crate::funcfield::normal_pair_fixed_check(v, g, &seeds, 3)? {
                    NormalPairVerdict::Consistent => {
                        out.conclusions = vec![Check::pass("(V^G, K^G) is a normal pair on the samples")];
                    }
                    NormalPairVerdict::Inconclusive(reason) => out.inconclusive = Some(reason),
                }
                Ok(())
            })
        }
        _ => Err(RingError::Incompatible(format!("{theorem} needs a finite instance"))),
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}
