//! Exact arithmetic in `F_p(x)`, the discrete valuation ring at a monic
//! irreducible center, affine substitution groups, and probe-based
//! certificates for fixed valuation rings.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Result, RingError};
use crate::expr::split_top_level;
use crate::poly::{is_prime, mod_inv, mod_pow, FpPoly};

/// A reduced fraction with monic denominator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: FpPoly,
    den: FpPoly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl RationalFunction {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(RingError::Invalid("zero denominator".into()));
        }
        let p = num.characteristic();
        if num.is_zero() {
            return Ok(Self::zero(p));
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead_inv = mod_inv(den.leading(), p);
        Ok(Self {
            num: num.scale(lead_inv),
            den: den.scale(lead_inv),
        })
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.characteristic();
        Self {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_poly(FpPoly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        Self::from_poly(FpPoly::one(p))
    }

    pub fn x(p: u64) -> Self {
        Self::from_poly(FpPoly::x(p))
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_poly(FpPoly::constant(p, c % p))
    }

    /// Parses `num` or `num/den`, each side a polynomial in `x`, optionally
    /// parenthesized: `(x^4+1)/(x^2)`.
    pub fn parse(s: &str, p: u64) -> Result<Self> {
        let parts = split_top_level(s.trim(), '/');
        let side = |t: &str| {
            let t = t.trim();
            let t = t
                .strip_prefix('(')
                .and_then(|u| u.strip_suffix(')'))
                .unwrap_or(t);
            FpPoly::parse(t, p, 'x')
        };
        match parts.as_slice() {
            [n] => Ok(Self::from_poly(side(n)?)),
            [n, d] => Self::new(side(n)?, side(d)?),
            _ => Err(RingError::Parse(format!("bad rational function '{s}'"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.num.characteristic()
    }

    pub fn numerator(&self) -> &FpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("denominators are nonzero")
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("denominators are nonzero")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Self::new(base.num.pow(k.unsigned_abs()), base.den.pow(k.unsigned_abs()))
    }

    /// `t(ax + b)`.
    pub fn subst(&self, a: u64, b: u64) -> Self {
        Self::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
            .expect("a ≠ 0 keeps the denominator nonzero")
    }
}

/// `v_f(t)`; `None` stands for `+∞` at `t = 0`.
pub fn valuation(center: &FpPoly, t: &RationalFunction) -> Option<i64> {
    let n = t.num.order_at(center)? as i64;
    let d = t.den.order_at(center).expect("denominator is nonzero") as i64;
    Some(n - d)
}

/// The valuation ring `V = {v_f ≥ 0}` of `F_p(x)` and its maximal ideal
/// `{v_f > 0}`, held intensionally through the center `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DVRWitness {
    p: u64,
    center: FpPoly,
}

impl DVRWitness {
    pub fn new(center: FpPoly) -> Result<Self> {
        let p = center.characteristic();
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if !center.is_monic() {
            return Err(RingError::Invalid(format!("center {center} is not monic")));
        }
        if let Some(factor) = center.find_factor() {
            return Err(RingError::ReducibleModulus {
                p,
                modulus: center.to_string(),
                factor: factor.to_string(),
            });
        }
        if center.degree() == Some(0) {
            return Err(RingError::Invalid("center must have positive degree".into()));
        }
        Ok(Self { p, center })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn center(&self) -> &FpPoly {
        &self.center
    }

    /// The center as a rational function, `v = 1`.
    pub fn uniformizer(&self) -> RationalFunction {
        RationalFunction::from_poly(self.center.clone())
    }

    pub fn valuation(&self, t: &RationalFunction) -> Option<i64> {
        valuation(&self.center, t)
    }

    pub fn contains(&self, t: &RationalFunction) -> bool {
        self.valuation(t).is_none_or(|v| v >= 0)
    }

    pub fn in_maximal_ideal(&self, t: &RationalFunction) -> bool {
        self.valuation(t).is_none_or(|v| v > 0)
    }
}

pub fn dvr_membership(v: &DVRWitness, t: &RationalFunction) -> bool {
    v.contains(t)
}

pub fn maximal_ideal_membership(v: &DVRWitness, t: &RationalFunction) -> bool {
    v.in_maximal_ideal(t)
}

/// One substitution `x ↦ a·x + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Affine {
    pub a: u64,
    pub b: u64,
}

impl Affine {
    pub fn identity() -> Self {
        Self { a: 1, b: 0 }
    }

    /// `self ∘ other` as maps on `F_p(x)`: apply `other`, then `self`.
    pub fn then_after(&self, other: &Self, p: u64) -> Self {
        Self {
            a: self.a * other.a % p,
            b: (other.a * self.b + other.b) % p,
        }
    }
}

/// A finite group of affine substitutions acting on `F_p(x)`.
#[derive(Debug, Clone, Serialize)]
pub struct SubstAction {
    p: u64,
    generators: Vec<Affine>,
    members: Vec<Affine>,
}

impl SubstAction {
    pub fn new(p: u64, generators: Vec<Affine>) -> Result<Self> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        let generators: Vec<Affine> = generators
            .into_iter()
            .map(|g| Affine { a: g.a % p, b: g.b % p })
            .collect();
        if let Some(g) = generators.iter().find(|g| g.a == 0) {
            return Err(RingError::NotAutomorphism {
                axiom: "bijective",
                witness: format!("x -> {}x+{}", g.a, g.b),
            });
        }
        let mut members = vec![Affine::identity()];
        let mut i = 0;
        while i < members.len() {
            for g in &generators {
                let next = g.then_after(&members[i], p);
                if !members.contains(&next) {
                    members.push(next);
                }
            }
            i += 1;
        }
        members.sort();
        Ok(Self { p, generators, members })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, vec![])
    }

    /// `scale(a)`, `translate(b)`, `affine(a,b)` or `id`.
    pub fn parse_spec(spec: &str, p: u64) -> Result<Affine> {
        let (head, args) = crate::expr::split_call(spec)?;
        let num = |i: usize| -> Result<u64> {
            let s = args
                .get(i)
                .ok_or_else(|| RingError::Parse(format!("action '{spec}' is missing an argument")))?;
            let v: i64 = s
                .trim()
                .parse()
                .map_err(|_| RingError::Parse(format!("bad integer '{s}' in '{spec}'")))?;
            Ok(v.rem_euclid(p as i64) as u64)
        };
        match head.as_str() {
            "id" | "identity" => Ok(Affine::identity()),
            "scale" => Ok(Affine { a: num(0)?, b: 0 }),
            "translate" => Ok(Affine { a: 1, b: num(0)? }),
            "affine" => Ok(Affine { a: num(0)?, b: num(1)? }),
            other => Err(RingError::Parse(format!("unknown funcfield action '{other}'"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn generators(&self) -> &[Affine] {
        &self.generators
    }

    pub fn members(&self) -> &[Affine] {
        &self.members
    }

    /// `Π_{σ ∈ G} σ(t)`.
    pub fn norm(&self, t: &RationalFunction) -> RationalFunction {
        self.members
            .iter()
            .fold(RationalFunction::one(self.p), |acc, s| acc.mul(&subst_apply(s, t)))
    }
}

pub fn subst_apply(sigma: &Affine, t: &RationalFunction) -> RationalFunction {
    t.subst(sigma.a, sigma.b)
}

pub fn fixed_membership(group: &SubstAction, t: &RationalFunction) -> bool {
    group.generators.iter().all(|g| &subst_apply(g, t) == t)
}

/// `V` is invariant iff `f(ax + b)` is an associate of `f` for each generator.
pub fn invariance_check(v: &DVRWitness, group: &SubstAction) -> bool {
    group
        .generators
        .iter()
        .all(|g| &v.center.compose_affine(g.a, g.b).monic_part().1 == v.center())
}

/// Size of the inertia group: substitutions acting trivially on `F_p[x]/(f)`,
/// i.e. those with `f | (a − 1)x + b`.
pub fn inertia_order(v: &DVRWitness, group: &SubstAction) -> usize {
    let p = v.p;
    group
        .members
        .iter()
        .filter(|g| {
            let lin = FpPoly::new(p, vec![g.b, (g.a + p - 1) % p]);
            lin.is_zero() || v.center.divides(&lin)
        })
        .count()
}

/// Probe elements `u·g^k` for `k ∈ [−span, span]` and `u ∈ {1, g+1, 1/(g+1)}`,
/// where `g` is the uniformizer (trivial group) or its norm.
pub fn standard_probes(v: &DVRWitness, group: &SubstAction, span: i64) -> Vec<RationalFunction> {
    let g = group.norm(&v.uniformizer());
    let one = RationalFunction::one(v.p);
    let g1 = g.add(&one);
    let units = [one.clone(), g1.clone(), g1.inv().expect("g + 1 is nonzero")];
    let mut out = Vec::new();
    for k in -span..=span {
        let gk = g.powi(k).expect("g is nonzero");
        for u in &units {
            out.push(u.mul(&gk));
        }
    }
    out
}

/// A seeded random rational function with numerator and denominator of
/// degree at most `max_deg`.
pub fn random_function(rng: &mut impl Rng, p: u64, max_deg: usize) -> RationalFunction {
    let mut poly = |nonzero: bool| loop {
        let deg = rng.gen_range(0..=max_deg);
        let f = FpPoly::new(p, (0..=deg).map(|_| rng.gen_range(0..p)).collect());
        if !nonzero || !f.is_zero() {
            return f;
        }
    };
    let num = poly(false);
    let den = poly(true);
    RationalFunction::new(num, den).expect("denominator is nonzero")
}

/// Probes plus seeded random norms, every element re-verified fixed.
pub fn fixed_samples(
    v: &DVRWitness,
    group: &SubstAction,
    span: i64,
    extra: usize,
    seed: u64,
) -> Result<Vec<RationalFunction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = standard_probes(v, group, span);
    let target = out.len() + extra;
    while out.len() < target {
        let r = random_function(&mut rng, v.p, 3);
        if !r.is_zero() {
            out.push(group.norm(&r));
        }
    }
    if let Some(bad) = out.iter().find(|t| !fixed_membership(group, t)) {
        return Err(RingError::Inconsistent(format!("probe {bad} is not fixed")));
    }
    Ok(out)
}

/// Agreement between computed and predicted memberships over a probe set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub probes: usize,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<String>,
}

impl ProbeReport {
    fn from_failures(probes: usize, failure: Option<String>) -> Self {
        Self {
            probes,
            agree: failure.is_none(),
            first_disagreement: failure,
        }
    }
}

/// Checks that `Rad((V :_V t)) = m` on the probes. Colon membership is
/// computed from the actual product `r·t`; radical membership from the
/// actual powers `r^n·t` for `n ≤ −v(t)`. Both are compared with the
/// valuation predictions `v(r) ≥ −v(t)` and `v(r) ≥ 1`.
pub fn critical_ideal_witness(
    v: &DVRWitness,
    t: &RationalFunction,
    probes: &[RationalFunction],
) -> Result<ProbeReport> {
    let vt = match v.valuation(t) {
        Some(x) if x < 0 => x,
        _ => return Err(RingError::Invalid(format!("{t} lies in V"))),
    };
    let vals: Vec<i64> = probes.iter().filter_map(|r| v.valuation(r)).collect();
    let (lo, hi) = (vals.iter().min().copied(), vals.iter().max().copied());
    if !matches!((lo, hi), (Some(l), Some(h)) if l <= -3 && h >= 3) {
        return Err(RingError::Invalid("probe valuations must span [-3, 3]".into()));
    }
    let bound = (-vt) as u64;
    for r in probes {
        let in_v = v.contains(r);
        let in_colon = in_v && v.contains(&r.mul(t));
        let in_rad = in_v
            && (1..=bound).any(|n| {
                let rn = r.powi(n as i64).expect("nonnegative power");
                v.contains(&rn.mul(t))
            });
        let vr = v.valuation(r);
        let predicted_colon = vr.is_none_or(|x| x >= -vt);
        let predicted_rad = vr.is_none_or(|x| x >= 1);
        let fail = if in_colon != predicted_colon {
            Some(format!("colon membership of {r}"))
        } else if in_rad != predicted_rad {
            Some(format!("radical membership of {r}"))
        } else if in_rad != v.in_maximal_ideal(r) {
            Some(format!("radical differs from m at {r}"))
        } else {
            None
        };
        if fail.is_some() {
            return Ok(ProbeReport::from_failures(probes.len(), fail));
        }
    }
    Ok(ProbeReport::from_failures(probes.len(), None))
}

/// Multiplicativity and the ultrametric inequality on seeded random pairs.
pub fn valuation_axioms_check(v: &DVRWitness, pairs: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("valuation axioms on {pairs} random pairs");
    for _ in 0..pairs {
        let s = random_function(&mut rng, v.p, 4);
        let t = random_function(&mut rng, v.p, 4);
        let (vs, vt) = (v.valuation(&s), v.valuation(&t));
        let prod = v.valuation(&s.mul(&t));
        let expect_prod = match (vs, vt) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        if prod != expect_prod {
            return Check::new(name, false, format!("v({s}·{t})"));
        }
        let sum = v.valuation(&s.add(&t));
        let floor = match (vs, vt) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let ok = match (sum, floor) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(m)) => x >= m,
        };
        if !ok {
            return Check::new(name, false, format!("v({s}+{t})"));
        }
    }
    Check::pass(name)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedValuationReport {
    pub expected_value_group: i64,
    pub observed_value_group: i64,
    pub checks: Vec<Check>,
    pub critical: ProbeReport,
}

impl FixedValuationReport {
    pub fn holds(&self) -> bool {
        self.critical.agree && self.checks.iter().all(|c| c.holds)
    }
}

/// Requires `V` invariant and a totally ramified center, so that the value
/// group on `K^G` is `|G|·ℤ`.
pub(crate) fn fixed_setting(v: &DVRWitness, group: &SubstAction) -> Result<i64> {
    if !invariance_check(v, group) {
        return Err(RingError::NotInvariant(format!(
            "center {} moves under the action",
            v.center
        )));
    }
    let e = inertia_order(v, group);
    if e != group.order() {
        return Err(RingError::Incompatible(format!(
            "inertia order {e} differs from |G| = {}",
            group.order()
        )));
    }
    Ok(e as i64)
}

/// `v` restricted to `K^G`: valuation axioms on sample pairs, value group
/// `d·ℤ`, the membership predicates for `V^G` and `m ∩ V^G`, and the
/// critical ideal witness inside `K^G` at `t = N(f)^{-1}`.
pub fn valuation_pair_fixed_check(
    v: &DVRWitness,
    group: &SubstAction,
    samples: &[RationalFunction],
) -> Result<FixedValuationReport> {
    let d = fixed_setting(v, group)?;
    let mut checks = Vec::new();
    let unfixed = samples.iter().find(|t| !fixed_membership(group, t));
    checks.push(Check::new(
        "samples lie in K^G",
        unfixed.is_none(),
        unfixed.map(|t| t.to_string()).unwrap_or_default(),
    ));
    let mut bad_pair = None;
    'outer: for s in samples {
        for t in samples {
            let (vs, vt) = (v.valuation(s), v.valuation(t));
            if let (Some(a), Some(b)) = (vs, vt) {
                if v.valuation(&s.mul(t)) != Some(a + b) {
                    bad_pair = Some(format!("v({s}·{t})"));
                    break 'outer;
                }
                if let Some(x) = v.valuation(&s.add(t)) {
                    if x < a.min(b) {
                        bad_pair = Some(format!("v({s}+{t})"));
                        break 'outer;
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "valuation axioms on K^G samples",
        bad_pair.is_none(),
        bad_pair.unwrap_or_default(),
    ));
    let observed = samples
        .iter()
        .filter_map(|t| v.valuation(t))
        .fold(0, gcd);
    let attains = samples.iter().any(|t| v.valuation(t) == Some(d));
    checks.push(Check::new(
        "value group on K^G is d·Z",
        observed == d && attains,
        format!("gcd of sampled valuations {observed}, d = {d}"),
    ));
    let norm = group.norm(&v.uniformizer());
    let predicate_mismatch = samples.iter().find(|t| {
        let fixed = fixed_membership(group, t);
        let vt = v.valuation(t);
        (fixed && v.contains(t)) != vt.is_none_or(|x| x >= 0)
            || (fixed && v.in_maximal_ideal(t)) != vt.is_none_or(|x| x > 0)
    });
    checks.push(Check::new(
        "V^G and m ∩ V^G match their valuation predicates",
        predicate_mismatch.is_none(),
        predicate_mismatch.map(|t| t.to_string()).unwrap_or_default(),
    ));
    let t = norm.inv().expect("norm is nonzero");
    let critical = critical_ideal_witness(v, &t, samples)?;
    Ok(FixedValuationReport {
        expected_value_group: d,
        observed_value_group: observed,
        checks,
        critical,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    /// Sampled `t ∉ V^G` for which random monic relations were refuted.
    pub refuted: usize,
    /// Sampled `t ∈ V^G`, each with the witness `x − t`.
    pub members: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// For sampled `t ∈ K^G` with `v(t) < 0`, evaluates seeded monic
/// polynomials of degree `≤ degree_cap` with coefficients from the sampled
/// `V^G` and confirms each value is nonzero with valuation `n·v(t)`.
pub fn integrally_closed_fixed_check(
    v: &DVRWitness,
    group: &SubstAction,
    samples: &[RationalFunction],
    degree_cap: usize,
    seed: u64,
) -> Result<ObstructionReport> {
    fixed_setting(v, group)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<&RationalFunction> = samples.iter().filter(|t| v.contains(t)).collect();
    let mut report = ObstructionReport {
        refuted: 0,
        members: 0,
        holds: true,
        failure: None,
    };
    for t in samples.iter().filter(|t| fixed_membership(group, t)) {
        match v.valuation(t) {
            Some(vt) if vt < 0 => {
                for n in 1..=degree_cap {
                    for _ in 0..4 {
                        let mut value = t.powi(n as i64).expect("nonnegative power");
                        for i in 0..n {
                            let c = coeffs[rng.gen_range(0..coeffs.len())];
                            value = value.add(&c.mul(&t.powi(i as i64).expect("nonnegative")));
                        }
                        if v.valuation(&value) != Some(n as i64 * vt) {
                            report.holds = false;
                            report.failure = Some(format!("degree {n} relation at {t}"));
                            return Ok(report);
                        }
                    }
                }
                report.refuted += 1;
            }
            _ => report.members += 1,
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct InverseCertificate {
    pub t: RationalFunction,
    pub r: RationalFunction,
    pub s: RationalFunction,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizationReport {
    pub certificates: Vec<InverseCertificate>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// For every sampled fixed `t ∉ V^G`, exhibits `r = N(f)^k ∈ (V^G :_{V^G} t)`
/// and `s = r^{-1} ∈ K^G` with `r·s = 1`. Also confirms, per sample, that
/// `(V : t)` contains `f^{−v(t)}`, a unit of `K`.
pub fn perfect_localization_fixed_check(
    v: &DVRWitness,
    group: &SubstAction,
    samples: &[RationalFunction],
) -> Result<LocalizationReport> {
    let d = fixed_setting(v, group)?;
    let norm = group.norm(&v.uniformizer());
    let mut report = LocalizationReport {
        certificates: vec![],
        holds: true,
        failure: None,
    };
    let one = RationalFunction::one(v.p);
    for t in samples.iter().filter(|t| fixed_membership(group, t)) {
        let vt = v.valuation(t).unwrap_or(0);
        if vt >= 0 {
            continue;
        }
        let fk = v.uniformizer().powi(-vt).expect("nonzero");
        if !v.contains(&fk.mul(t)) {
            report.holds = false;
            report.failure = Some(format!("f^{} is not in (V : {t})", -vt));
            return Ok(report);
        }
        let k = (-vt + d - 1) / d;
        let r = norm.powi(k).expect("nonzero");
        let s = r.inv().expect("nonzero");
        let ok = fixed_membership(group, &r)
            && v.contains(&r)
            && v.contains(&r.mul(t))
            && fixed_membership(group, &s)
            && r.mul(&s) == one;
        if !ok {
            report.holds = false;
            report.failure = Some(format!("no inverse certificate at {t}"));
            return Ok(report);
        }
        report.certificates.push(InverseCertificate { t: t.clone(), r, s });
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalPairVerdict {
    Consistent,
    Inconclusive(String),
}

/// For each seed set, runs a bounded closure under products from `V^G ∪ seed`.
/// A seed with negative valuation must reach `N(f)^{-1}` through a `V^G`
/// multiple (so the closure is `K^G`); a seed inside `V^G` must stay inside.
pub fn normal_pair_fixed_check(
    v: &DVRWitness,
    group: &SubstAction,
    seeds: &[Vec<RationalFunction>],
    bound: usize,
) -> Result<NormalPairVerdict> {
    fixed_setting(v, group)?;
    let target = group.norm(&v.uniformizer()).inv().expect("nonzero");
    for seed in seeds {
        if let Some(t) = seed.iter().find(|t| !fixed_membership(group, t)) {
            return Ok(NormalPairVerdict::Inconclusive(format!("seed {t} is not fixed")));
        }
        let mut closure: Vec<RationalFunction> = seed.clone();
        for _ in 0..bound {
            let mut next = closure.clone();
            for a in &closure {
                for b in seed {
                    let c = a.mul(b);
                    if !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
            closure = next;
        }
        if seed.iter().all(|t| v.contains(t)) {
            if let Some(t) = closure.iter().find(|t| !v.contains(t)) {
                return Ok(NormalPairVerdict::Inconclusive(format!("closure left V^G at {t}")));
            }
        } else {
            let reached = closure.iter().any(|s| {
                !s.is_zero()
                    && target
                        .div(s)
                        .map(|c| v.contains(&c) && fixed_membership(group, &c))
                        .unwrap_or(false)
            });
            if !reached {
                return Ok(NormalPairVerdict::Inconclusive(
                    "bounded closure did not reach N(f)^-1".into(),
                ));
            }
        }
    }
    Ok(NormalPairVerdict::Consistent)
}

/// Every sampled fixed `t ∉ V` yields `c ∈ V^G` with `c·t = N(f)^{-1}`, so
/// `V^G[t]` contains `N(f)^{-1}` and hence all of `K^G`: evidence that no
/// ring sits strictly between `V^G` and `K^G` on the samples. With the
/// trivial group this is the statement for `V ⊂ K` itself.
pub fn overring_evidence(v: &DVRWitness, group: &SubstAction, samples: &[RationalFunction]) -> Check {
    let target = group.norm(&v.uniformizer()).inv().expect("nonzero");
    let miss = samples
        .iter()
        .filter(|t| fixed_membership(group, t) && !v.contains(t))
        .find(|t| {
            !target
                .div(t)
                .map(|c| v.contains(&c) && fixed_membership(group, &c))
                .unwrap_or(false)
        });
    Check::new(
        "every sampled t outside the valuation ring generates N(f)^-1",
        miss.is_none(),
        miss.map(|t| t.to_string()).unwrap_or_default(),
    )
}

/// `(V : t)` contains the unit `f^{−v(t)}` of `K` for every sampled `t ∉ V`.
pub fn perfect_localization_base_check(v: &DVRWitness, samples: &[RationalFunction]) -> Check {
    let miss = samples.iter().find(|t| match v.valuation(t) {
        Some(vt) if vt < 0 => {
            let fk = v.uniformizer().powi(-vt).expect("nonzero");
            !v.contains(&fk.mul(t))
        }
        _ => false,
    });
    Check::new(
        "(V : t) contains a unit of K for every sampled t",
        miss.is_none(),
        miss.map(|t| t.to_string()).unwrap_or_default(),
    )
}

/// For `I = (f^k)`, `k = 1..=span`, exhibits `N(f)^j ∈ I ∩ V^G` with inverse
/// in `K^G`, so `(I ∩ V^G)·K^G = K^G`.
pub fn filter_contraction_probe(v: &DVRWitness, group: &SubstAction, span: i64) -> Result<Check> {
    let d = fixed_setting(v, group)?;
    let norm = group.norm(&v.uniformizer());
    let name = "every (f^k) contracts into the fixed filter";
    for k in 1..=span {
        let r = norm.powi((k + d - 1) / d).expect("nonzero");
        let s = r.inv().expect("nonzero");
        let ok = v.valuation(&r).is_some_and(|x| x >= k)
            && fixed_membership(group, &r)
            && fixed_membership(group, &s)
            && r.mul(&s).is_one();
        if !ok {
            return Ok(Check::new(name, false, format!("k = {k}")));
        }
    }
    Ok(Check::pass(name))
}

/// Multiplicative order of `a` in `F_p^*`.
pub fn unit_order(a: u64, p: u64) -> u64 {
    (1..p).find(|&k| mod_pow(a, k, p) == 1).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str, p: u64) -> RationalFunction {
        RationalFunction::parse(s, p).unwrap()
    }

    fn dvr(center: &str, p: u64) -> DVRWitness {
        DVRWitness::new(FpPoly::parse(center, p, 'x').unwrap()).unwrap()
    }

    fn scaling(p: u64, a: u64) -> SubstAction {
        SubstAction::new(p, vec![Affine { a, b: 0 }]).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(rf("(x^2-1)/(x-1)", 5), rf("x+1", 5));
        assert_eq!(rf("(2x)/(2x^2)", 5), rf("1/x", 5));
        assert_eq!(rf("0/(x+3)", 5), RationalFunction::zero(5));
        assert_eq!(rf("(x^4+1)/(x^2)", 5).to_string(), "(x^4+1)/(x^2)");
        assert!(RationalFunction::parse("1/0", 5).is_err());
        assert_eq!(rf("(x+1)/(3x)", 7).denominator(), &FpPoly::x(7));
    }

    #[test]
    fn valuations() {
        let x = FpPoly::x(5);
        assert_eq!(valuation(&x, &rf("x^2/(x+1)", 5)), Some(2));
        assert_eq!(valuation(&x, &rf("1/x", 5)), Some(-1));
        assert_eq!(valuation(&x, &rf("(x^3+x)/(x^2)", 5)), Some(-1));
        assert_eq!(valuation(&x, &RationalFunction::zero(5)), None);
        let v = dvr("x", 3);
        assert!(v.contains(&RationalFunction::one(3)));
        assert!(!v.in_maximal_ideal(&RationalFunction::one(3)));
        assert!(!v.contains(&rf("1/x", 3)));
        assert!(v.in_maximal_ideal(&rf("x/(x+1)", 3)));
        assert!(DVRWitness::new(FpPoly::parse("x^2+x", 2, 'x').unwrap()).is_err());
    }

    #[test]
    fn substitution() {
        let g = scaling(5, 2);
        assert_eq!(g.order(), 4);
        assert!(fixed_membership(&g, &rf("x^4", 5)));
        assert!(!fixed_membership(&g, &rf("x", 5)));
        assert!(fixed_membership(&SubstAction::trivial(5).unwrap(), &rf("x^3+1", 5)));
        assert_eq!(scaling(7, 3).order(), 6);
        let v = dvr("x", 5);
        assert!(invariance_check(&v, &g));
        let tr = SubstAction::new(5, vec![SubstAction::parse_spec("translate(1)", 5).unwrap()]).unwrap();
        assert_eq!(tr.order(), 5);
        assert!(!invariance_check(&v, &tr));
        assert!(invariance_check(&v, &SubstAction::trivial(5).unwrap()));
        assert_eq!(unit_order(2, 5), 4);
    }

    #[test]
    fn critical_witness() {
        let v = dvr("x", 5);
        let triv = SubstAction::trivial(5).unwrap();
        let probes = standard_probes(&v, &triv, 6);
        for t in ["1/x", "1/x^2", "(x+1)/x^3"] {
            let rep = critical_ideal_witness(&v, &rf(t, 5), &probes).unwrap();
            assert!(rep.agree, "{t}: {rep:?}");
        }
        assert!(critical_ideal_witness(&v, &rf("x", 5), &probes).is_err());
        assert!(critical_ideal_witness(&v, &rf("1/x", 5), &probes[..3]).is_err());
    }

    #[test]
    fn fixed_valuation_pairs() {
        for (p, a) in [(5, 2), (7, 3)] {
            let v = dvr("x", p);
            let g = scaling(p, a);
            let samples = fixed_samples(&v, &g, 6, 20, 0).unwrap();
            let rep = valuation_pair_fixed_check(&v, &g, &samples).unwrap();
            assert!(rep.holds(), "{rep:?}");
            assert_eq!(rep.observed_value_group, unit_order(a, p) as i64);
        }
        let v = dvr("x", 5);
        let tr = SubstAction::new(5, vec![Affine { a: 1, b: 1 }]).unwrap();
        assert!(matches!(
            valuation_pair_fixed_check(&v, &tr, &[]),
            Err(RingError::NotInvariant(_))
        ));
    }

    #[test]
    fn fixed_obstructions_and_localization() {
        let v = dvr("x", 5);
        let g = scaling(5, 2);
        let samples: Vec<RationalFunction> = ["1/x^4", "x^4", "(x^4+1)/x^4", "1/x^8"]
            .iter()
            .map(|s| rf(s, 5))
            .collect();
        let obs = integrally_closed_fixed_check(&v, &g, &samples, 3, 0).unwrap();
        assert!(obs.holds);
        assert_eq!((obs.refuted, obs.members), (3, 1));
        let loc = perfect_localization_fixed_check(&v, &g, &samples).unwrap();
        assert!(loc.holds);
        let c = loc.certificates.iter().find(|c| c.t == rf("1/x^8", 5)).unwrap();
        assert_eq!(c.r, rf("x^8", 5));
        let seeds = vec![vec![rf("1/x^4", 5)], vec![rf("x^4", 5)], vec![rf("x^4", 5), rf("1/x^4", 5)]];
        assert_eq!(
            normal_pair_fixed_check(&v, &g, &seeds, 2).unwrap(),
            NormalPairVerdict::Consistent
        );
        let triv = SubstAction::trivial(5).unwrap();
        assert!(overring_evidence(&v, &triv, &standard_probes(&v, &triv, 6)).holds);
        assert!(overring_evidence(&v, &g, &samples).holds);
        assert!(perfect_localization_base_check(&v, &standard_probes(&v, &triv, 6)).holds);
        assert!(filter_contraction_probe(&v, &g, 6).unwrap().holds);
    }

    #[test]
    fn valuation_axioms_random() {
        for (p, c) in [(5, "x"), (7, "x"), (3, "x^2+1")] {
            let v = dvr(c, p);
            assert!(valuation_axioms_check(&v, 1000, 7).holds);
        }
    }
}
