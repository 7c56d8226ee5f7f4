//! Automorphism groups acting on finite rings: orbits, fixed rings, the
//! induced action on a quotient, the fixed-quotient isomorphism and orbit
//! symmetrization of linear representations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::check::{all_hold, Check};
use crate::error::{Result, RingError};
use crate::expr::split_call;
use crate::ideals::{ideal_image, is_bijection, natural_map, Ideal, QuotientRing};
use crate::ring::{ElemSet, FiniteRing, Limits, Shape, SubringHandle};

/// A unital ring automorphism stored as a permutation of element indices.
#[derive(Clone)]
pub struct Automorphism {
    ring: Arc<FiniteRing>,
    perm: Vec<usize>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.perm == other.perm
    }
}

impl Eq for Automorphism {}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<String> = self
            .perm
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i != j)
            .map(|(i, &j)| format!("{}->{}", self.ring.label(i), self.ring.label(j)))
            .collect();
        write!(f, "Automorphism[{}]", moved.join(", "))
    }
}

impl Automorphism {
    /// Checks bijectivity, additivity, multiplicativity and `σ(1) = 1`.
    pub fn new(ring: &Arc<FiniteRing>, perm: Vec<usize>) -> Result<Self> {
        let n = ring.order();
        let fail = |axiom, witness: String| Err(RingError::NotAutomorphism { axiom, witness });
        if perm.len() != n || perm.iter().any(|&x| x >= n) || !is_bijection(&perm, n) {
            return fail("bijective", "permutation table".into());
        }
        if perm[ring.one()] != ring.one() {
            return fail("fixes one", ring.label(perm[ring.one()]).to_string());
        }
        for a in 0..n {
            for b in a..n {
                let w = || format!("({}, {})", ring.label(a), ring.label(b));
                if perm[ring.add(a, b)] != ring.add(perm[a], perm[b]) {
                    return fail("additive", w());
                }
                if perm[ring.mul(a, b)] != ring.mul(perm[a], perm[b]) {
                    return fail("multiplicative", w());
                }
            }
        }
        Ok(Self {
            ring: Arc::clone(ring),
            perm,
        })
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            perm: ring.elements().collect(),
        }
    }

    /// Builds from a label map; unmapped labels are fixed.
    pub fn from_label_map(ring: &Arc<FiniteRing>, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut perm: Vec<usize> = ring.elements().collect();
        for (from, to) in map {
            perm[ring.index_of(from)?] = ring.index_of(to)?;
        }
        Self::new(ring, perm)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.ring, &other.ring) {
            return Err(RingError::RingMismatch);
        }
        Ok(Self {
            ring: Arc::clone(&self.ring),
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        Self {
            ring: Arc::clone(&self.ring),
            perm: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Label-permutation map of the moved elements.
    pub fn label_map(&self) -> BTreeMap<String, String> {
        self.perm
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i != j)
            .map(|(i, &j)| (self.ring.label(i).to_string(), self.ring.label(j).to_string()))
            .collect()
    }
}

fn power_map(ring: &Arc<FiniteRing>, exp: u64) -> Result<Automorphism> {
    Automorphism::new(ring, ring.elements().map(|x| ring.pow(x, exp)).collect())
}

/// Named built-in automorphisms:
/// `id`, `frobenius`, `frobenius(k)` (x ↦ x^(p^k)), `power(e)`, `swap`,
/// `componentwise(f)`, `negsecond` ((r, m) ↦ (r, −m) on an idealization),
/// and `compose(f, g)` (f after g).
pub fn builtin(ring: &Arc<FiniteRing>, spec: &str) -> Result<Automorphism> {
    let (head, args) = split_call(spec)?;
    let bad = |msg: &str| RingError::Invalid(format!("action '{spec}': {msg}"));
    match head.as_str() {
        "id" | "identity" => Ok(Automorphism::identity(ring)),
        "frobenius" => {
            let p = ring.characteristic();
            if !crate::poly::is_prime(p) {
                return Err(bad("characteristic is not prime"));
            }
            let k: u32 = match args.first() {
                Some(a) => a.trim().parse().map_err(|_| bad("expected integer k"))?,
                None => 1,
            };
            power_map(ring, p.pow(k))
        }
        "power" => {
            let e: u64 = args
                .first()
                .and_then(|a| a.trim().parse().ok())
                .ok_or_else(|| bad("expected integer exponent"))?;
            power_map(ring, e)
        }
        "swap" => match ring.shape() {
            Shape::Product(a, b) if a.construction() == b.construction() => {
                let n = b.order();
                Automorphism::new(ring, ring.elements().map(|x| (x % n) * n + x / n).collect())
            }
            _ => Err(bad("swap needs a product of two equal factors")),
        },
        "componentwise" => {
            let inner = args.first().ok_or_else(|| bad("missing inner action"))?;
            match ring.shape() {
                Shape::Product(a, b) => {
                    let fa = builtin(a, inner)?;
                    let fb = builtin(b, inner)?;
                    let n = b.order();
                    Automorphism::new(
                        ring,
                        ring.elements()
                            .map(|x| fa.apply(x / n) * n + fb.apply(x % n))
                            .collect(),
                    )
                }
                Shape::Idealization(a, m) if m.description() == "self" => {
                    let fa = builtin(a, inner)?;
                    let n = m.order();
                    Automorphism::new(
                        ring,
                        ring.elements()
                            .map(|x| fa.apply(x / n) * n + fa.apply(x % n))
                            .collect(),
                    )
                }
                _ => Err(bad("componentwise needs a product or a self-idealization")),
            }
        }
        "negsecond" => match ring.shape() {
            Shape::Idealization(_, m) => {
                let n = m.order();
                let neg = |x: usize| {
                    (0..n)
                        .find(|&y| m.add(x, y) == m.zero())
                        .expect("module has additive inverses")
                };
                Automorphism::new(ring, ring.elements().map(|x| (x / n) * n + neg(x % n)).collect())
            }
            _ => Err(bad("negsecond needs an idealization")),
        },
        "compose" => {
            if args.len() != 2 {
                return Err(bad("compose takes two actions"));
            }
            builtin(ring, &args[0])?.compose(&builtin(ring, &args[1])?)
        }
        other => Err(RingError::Parse(format!("unknown action '{other}'"))),
    }
}

/// A finite group of automorphisms, closed under composition.
#[derive(Clone, Debug)]
pub struct ActionGroup {
    ring: Arc<FiniteRing>,
    generators: Vec<Automorphism>,
    members: Vec<Automorphism>,
}

/// Closes the generators under composition (inverses come for free in a
/// finite group). Members are sorted by permutation, identity first.
pub fn close_group(
    ring: &Arc<FiniteRing>,
    generators: Vec<Automorphism>,
    limits: &Limits,
) -> Result<ActionGroup> {
    if generators.iter().any(|g| !Arc::ptr_eq(g.ring(), ring)) {
        return Err(RingError::RingMismatch);
    }
    let id = Automorphism::identity(ring);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(id.perm.clone());
    let mut frontier = vec![id];
    let mut members = Vec::new();
    while let Some(g) = frontier.pop() {
        for h in &generators {
            let gh = h.compose(&g)?;
            if seen.insert(gh.perm.clone()) {
                if seen.len() > limits.max_group_order {
                    return Err(RingError::CapExceeded {
                        what: "group",
                        order: seen.len(),
                        cap: limits.max_group_order,
                    });
                }
                frontier.push(gh);
            }
        }
        members.push(g);
    }
    members.sort_by(|a, b| {
        b.is_identity()
            .cmp(&a.is_identity())
            .then_with(|| a.perm.cmp(&b.perm))
    });
    Ok(ActionGroup {
        ring: Arc::clone(ring),
        generators,
        members,
    })
}

impl ActionGroup {
    pub fn trivial(ring: &Arc<FiniteRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            generators: vec![],
            members: vec![Automorphism::identity(ring)],
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn members(&self) -> &[Automorphism] {
        &self.members
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.generators.iter().all(|g| g.apply(x) == x)
    }
}

/// First element of `set` moved outside `set` by some generator.
pub fn invariance_witness(set: &ElemSet, group: &ActionGroup) -> Option<(usize, usize)> {
    group.generators.iter().find_map(|g| {
        set.iter()
            .find(|&&x| !set.contains(&g.apply(x)))
            .map(|&x| (x, g.apply(x)))
    })
}

/// `σ(S) ⊆ S` for every generator; enough because the group is finite.
pub fn is_invariant_set(set: &ElemSet, group: &ActionGroup) -> bool {
    invariance_witness(set, group).is_none()
}

pub fn is_invariant_subring(sub: &SubringHandle, group: &ActionGroup) -> bool {
    Arc::ptr_eq(sub.ring(), group.ring()) && is_invariant_set(sub.members(), group)
}

/// Orbit data for one element: the orbit, `n_t`, both sum conventions
/// and the orbit product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub element: usize,
    pub members: ElemSet,
    pub size: usize,
    /// Sum over the distinct orbit elements.
    pub orbit_sum: usize,
    /// Sum over all group elements, `Σ_σ σ(t)`.
    pub group_sum: usize,
    /// Product over the distinct orbit elements.
    pub orbit_prod: usize,
}

pub fn orbit(t: usize, group: &ActionGroup) -> Orbit {
    let ring = &group.ring;
    let members: ElemSet = group.members.iter().map(|g| g.apply(t)).collect();
    Orbit {
        element: t,
        size: members.len(),
        orbit_sum: ring.sum(members.iter().copied()),
        group_sum: ring.sum(group.members.iter().map(|g| g.apply(t))),
        orbit_prod: ring.product(members.iter().copied()),
        members,
    }
}

/// `S^G`. Requires `S` to be invariant.
pub fn fixed_subring(sub: &SubringHandle, group: &ActionGroup) -> Result<SubringHandle> {
    sub.same_ring(&group.ring.full())?;
    if let Some((x, y)) = invariance_witness(sub.members(), group) {
        return Err(RingError::NotInvariant(format!(
            "{} ↦ {}",
            group.ring.label(x),
            group.ring.label(y)
        )));
    }
    let members = sub.iter().filter(|&x| group.fixes(x)).collect();
    SubringHandle::new(&group.ring, members)
}

/// The induced action `σ(r + M) = σ(r) + M` on `R/M`; needs `σ(M) = M`.
pub fn quotient_action(
    ideal: &Ideal,
    group: &ActionGroup,
    limits: &Limits,
) -> Result<(QuotientRing, ActionGroup)> {
    for g in &group.generators {
        let image = ideal_image(g, ideal)?;
        if image != *ideal {
            return Err(RingError::OrbitNotSingleton(format!("{:?}", image.labels())));
        }
    }
    let q = QuotientRing::new(ideal)?;
    let qring = Arc::clone(q.ring());
    let induced = group
        .generators
        .iter()
        .map(|g| {
            let perm = qring
                .elements()
                .map(|c| q.project(g.apply(q.representative(c))).expect("carrier is invariant"))
                .collect();
            Automorphism::new(&qring, perm)
        })
        .collect::<Result<Vec<_>>>()?;
    let h = close_group(&qring, induced, limits)?;
    Ok((q, h))
}

/// Outcome of checking `R^G/𝔪 ≅ (R/M)^G` via `r + 𝔪 ↦ r + M`.
#[derive(Debug, Clone, Serialize)]
pub struct FixedQuotientReport {
    pub hypotheses: Vec<Check>,
    /// `None` when a hypothesis failed and no claim is made.
    pub isomorphism: Option<bool>,
    pub conclusions: Vec<Check>,
    /// Label pairs `(r + 𝔪, r + M)`.
    pub witness_map: Vec<(String, String)>,
}

/// Characteristic of `R^G/𝔪` and the first `r` whose orbit size it divides.
pub(crate) fn char_divides_orbit(
    base: &SubringHandle,
    fixed_ideal: &Ideal,
    group: &ActionGroup,
) -> Result<(u64, Option<(usize, usize)>)> {
    let q = QuotientRing::new(fixed_ideal)?;
    let ch = q.ring().characteristic();
    let bad = base.iter().find_map(|r| {
        let n = orbit(r, group).size;
        (n as u64).is_multiple_of(ch).then_some((r, n))
    });
    Ok((ch, bad))
}

pub fn fixed_quotient_iso_check(
    base: &SubringHandle,
    max_ideal: &Ideal,
    group: &ActionGroup,
    limits: &Limits,
) -> Result<FixedQuotientReport> {
    let ring = Arc::clone(group.ring());
    if max_ideal.carrier() != base {
        return Err(RingError::Invalid("ideal does not live in the given ring".into()));
    }
    let mut hyps = vec![Check::new("M is maximal in R", max_ideal.is_maximal(), "")];
    let orbit_images: Vec<Ideal> = group
        .generators
        .iter()
        .map(|g| ideal_image(g, max_ideal))
        .collect::<Result<_>>()?;
    let stray = orbit_images.iter().find(|i| *i != max_ideal);
    hyps.push(Check::new(
        "orbit of M is {M}",
        stray.is_none(),
        stray.map(|i| format!("also contains {:?}", i.labels())).unwrap_or_default(),
    ));
    let fixed = fixed_subring(base, group)?;
    let small = max_ideal.contract(&fixed)?;
    let (ch, bad) = char_divides_orbit(base, &small, group)?;
    hyps.push(Check::new(
        "char(R^G/m) divides no orbit size n_r",
        bad.is_none(),
        match bad {
            Some((r, n)) => format!("char {ch} divides n_r = {n} at r = {}", ring.label(r)),
            None => format!("char {ch}"),
        },
    ));
    if !all_hold(&hyps) {
        return Ok(FixedQuotientReport {
            hypotheses: hyps,
            isomorphism: None,
            conclusions: vec![],
            witness_map: vec![],
        });
    }
    let q_small = QuotientRing::new(&small)?;
    let (q_big, induced) = quotient_action(max_ideal, group, limits)?;
    let target = fixed_subring(&q_big.ring().full(), &induced)?;
    let phi = natural_map(&q_small, &q_big)?;
    let (a, b) = (q_small.ring(), q_big.ring());
    let hom = a.elements().all(|x| {
        a.elements().all(|y| {
            phi[a.add(x, y)] == b.add(phi[x], phi[y]) && phi[a.mul(x, y)] == b.mul(phi[x], phi[y])
        })
    }) && phi[a.one()] == b.one();
    let image: ElemSet = phi.iter().copied().collect();
    let injective = image.len() == phi.len();
    let onto = &image == target.members();
    let conclusions = vec![
        Check::new("phi is a ring homomorphism", hom, ""),
        Check::new("phi is injective", injective, ""),
        Check::new(
            "image of phi is (R/M)^G",
            onto,
            format!("|image| = {}, |(R/M)^G| = {}", image.len(), target.len()),
        ),
    ];
    let witness_map = a
        .elements()
        .map(|x| (a.label(x).to_string(), b.label(phi[x]).to_string()))
        .collect();
    Ok(FixedQuotientReport {
        isomorphism: Some(all_hold(&conclusions)),
        hypotheses: hyps,
        conclusions,
        witness_map,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetrizeMode {
    /// Sum over orbit representatives of the coefficient being fixed.
    Orbit,
    /// Sum over the whole group at once.
    FullGroup,
}

/// `m·t = Σ m_i r'_i u_i` with every `r'_i` fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetrizationCertificate {
    pub mode: SymmetrizeMode,
    pub multiplier: u64,
    /// `(m_i, r'_i)` per input term.
    pub terms: Vec<(u64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SymmetrizeOutcome {
    Certificate(SymmetrizationCertificate),
    /// The running value `m·t` vanished; reported, not an error.
    HypothesisFailure { step: usize, reason: String },
}

/// Rewrites `t = Σ r_i u_i` (t and all u_i fixed, r_i ∈ R) into a relation
/// with fixed coefficients, then replays the relation through the tables.
pub fn symmetrize_representation(
    t: usize,
    terms: &[(usize, usize)],
    base: &SubringHandle,
    group: &ActionGroup,
    mode: SymmetrizeMode,
) -> Result<SymmetrizeOutcome> {
    let ring = Arc::clone(group.ring());
    base.same_ring(&ring.full())?;
    if !is_invariant_subring(base, group) {
        return Err(RingError::NotInvariant("base ring".into()));
    }
    if !group.fixes(t) {
        return Err(RingError::Invalid(format!("{} is not fixed", ring.label(t))));
    }
    for &(r, u) in terms {
        if !base.contains(r) {
            return Err(RingError::Invalid(format!("coefficient {} not in R", ring.label(r))));
        }
        if !group.fixes(u) {
            return Err(RingError::Invalid(format!("{} is not fixed", ring.label(u))));
        }
    }
    let lhs = ring.sum(terms.iter().map(|&(r, u)| ring.mul(r, u)));
    if lhs != t {
        return Err(RingError::Invalid("t differs from the sum of the terms".into()));
    }
    let cert = match mode {
        SymmetrizeMode::FullGroup => {
            let m = group.order() as u64;
            if ring.scalar(m, t) == ring.zero() {
                return Ok(SymmetrizeOutcome::HypothesisFailure {
                    step: 0,
                    reason: format!("|G|·t = 0 with |G| = {m}"),
                });
            }
            SymmetrizationCertificate {
                mode,
                multiplier: m,
                terms: terms.iter().map(|&(r, _)| (1, orbit(r, group).group_sum)).collect(),
            }
        }
        SymmetrizeMode::Orbit => {
            if t == ring.zero() {
                return Ok(SymmetrizeOutcome::HypothesisFailure {
                    step: 0,
                    reason: "t = 0".into(),
                });
            }
            let mut m: u64 = 1;
            let mut mults: Vec<u64> = vec![1; terms.len()];
            let mut coeffs: Vec<usize> = terms.iter().map(|&(r, _)| r).collect();
            for i in 0..terms.len() {
                if group.fixes(coeffs[i]) {
                    continue;
                }
                // one group element per orbit point of the current coefficient
                let mut reps: BTreeMap<usize, &Automorphism> = BTreeMap::new();
                for g in group.members() {
                    reps.entry(g.apply(coeffs[i])).or_insert(g);
                }
                let n = reps.len() as u64;
                m *= n;
                for mult in mults.iter_mut().take(i) {
                    *mult *= n;
                }
                for c in coeffs.iter_mut().skip(i) {
                    *c = ring.sum(reps.values().map(|g| g.apply(*c)));
                }
                if ring.scalar(m, t) == ring.zero() {
                    return Ok(SymmetrizeOutcome::HypothesisFailure {
                        step: i,
                        reason: format!("m·t = 0 with m = {m}"),
                    });
                }
            }
            SymmetrizationCertificate {
                mode,
                multiplier: m,
                terms: mults.into_iter().zip(coeffs).collect(),
            }
        }
    };
    verify_certificate(t, terms, base, group, &cert)?;
    Ok(SymmetrizeOutcome::Certificate(cert))
}

/// Replays `m·t = Σ m_i r'_i u_i` and checks each `r'_i ∈ R^G`.
pub fn verify_certificate(
    t: usize,
    terms: &[(usize, usize)],
    base: &SubringHandle,
    group: &ActionGroup,
    cert: &SymmetrizationCertificate,
) -> Result<()> {
    let ring = group.ring();
    if cert.terms.len() != terms.len() {
        return Err(RingError::Inconsistent("certificate length".into()));
    }
    for &(_, r) in &cert.terms {
        if !base.contains(r) || !group.fixes(r) {
            return Err(RingError::Inconsistent(format!(
                "certificate coefficient {} is not in R^G",
                ring.label(r)
            )));
        }
    }
    let lhs = ring.scalar(cert.multiplier, t);
    let rhs = ring.sum(
        cert.terms
            .iter()
            .zip(terms)
            .map(|(&(mi, r), &(_, u))| ring.scalar(mi, ring.mul(r, u))),
    );
    if lhs != rhs || lhs == ring.zero() {
        return Err(RingError::Inconsistent(format!(
            "certificate fails to replay: {} vs {}",
            ring.label(lhs),
            ring.label(rhs)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Construction;
    use crate::ideals::{ideal_generated, radical};

    fn build(expr: &str) -> Arc<FiniteRing> {
        expr.parse::<Construction>().unwrap().build(&Limits::default()).unwrap()
    }

    fn group(ring: &Arc<FiniteRing>, specs: &[&str]) -> ActionGroup {
        let gens = specs.iter().map(|s| builtin(ring, s).unwrap()).collect();
        close_group(ring, gens, &Limits::default()).unwrap()
    }

    fn set(ring: &FiniteRing, labels: &[&str]) -> ElemSet {
        labels.iter().map(|l| ring.index_of(l).unwrap()).collect()
    }

    #[test]
    fn group_closure() {
        let f9 = build("gf(3,2)");
        assert_eq!(group(&f9, &["id"]).order(), 1);
        let f81 = build("gf(3,4)");
        assert_eq!(group(&f81, &["frobenius"]).order(), 4);
        let t = build("prod(gf(5,1),gf(5,1))");
        assert_eq!(group(&t, &["swap"]).order(), 2);
    }

    #[test]
    fn non_automorphism_rejected() {
        let t = build("idealization(gf(3,2),self)");
        // x ↦ x^3 kills the module part: (a, b)^3 = (a^3, 0)
        let err = builtin(&t, "frobenius").unwrap_err();
        assert!(matches!(err, RingError::NotAutomorphism { .. }));
        let t = build("prod(gf(5,1),gf(5,1))");
        assert!(builtin(&t, "compose(swap,id)").is_ok());
        assert!(matches!(
            Automorphism::from_label_map(&t, &[("(1,1)".to_string(), "(2,2)".to_string())].into()),
            Err(RingError::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn invariance_examples() {
        let t = build("prod(gf(3,2),gf(3,2))");
        let g = group(&t, &["componentwise(frobenius)"]);
        assert!(is_invariant_subring(&crate::ring::subring_closure(&t, []), &g));
        let diag9: ElemSet = t
            .elements()
            .filter(|&x| x / 9 == x % 9)
            .collect();
        let diag9 = SubringHandle::new(&t, diag9).unwrap();
        assert!(is_invariant_subring(&diag9, &g));

        let t = build("idealization(gf(3,2),self)");
        let g = group(&t, &["componentwise(frobenius)"]);
        let base: ElemSet = t.elements().filter(|x| x % 9 == 0).collect();
        assert!(is_invariant_subring(&SubringHandle::new(&t, base).unwrap(), &g));

        let t = build("prod(gf(3,1),gf(3,1))");
        let g = group(&t, &["swap"]);
        assert!(!is_invariant_set(&set(&t, &["(0,0)", "(1,0)", "(2,0)"]), &g));
    }

    #[test]
    fn orbit_examples() {
        let f9 = build("gf(3,2)");
        let triv = ActionGroup::trivial(&f9);
        let a = f9.index_of("a").unwrap();
        let o = orbit(a, &triv);
        assert_eq!((o.size, o.orbit_sum, o.orbit_prod), (1, a, a));

        let f4 = build("gf(2,2)");
        let g = group(&f4, &["frobenius"]);
        let a = f4.index_of("a").unwrap();
        let o = orbit(a, &g);
        assert_eq!(o.members, set(&f4, &["a", "a+1"]));
        assert_eq!(o.orbit_sum, f4.one());
        assert_eq!(o.orbit_prod, f4.one());

        let t = build("prod(gf(3,1),gf(3,1))");
        let g = group(&t, &["swap"]);
        let o = orbit(t.index_of("(1,2)").unwrap(), &g);
        assert_eq!(o.members, set(&t, &["(1,2)", "(2,1)"]));
        assert_eq!(o.orbit_sum, t.index_of("(0,0)").unwrap());
        assert_eq!(o.orbit_prod, t.index_of("(2,2)").unwrap());
        assert_eq!(o.group_sum, o.orbit_sum);
    }

    #[test]
    fn fixed_subring_examples() {
        let t = build("prod(gf(3,2),gf(3,2))");
        let g = group(&t, &["componentwise(frobenius)"]);
        let fixed = fixed_subring(&t.full(), &g).unwrap();
        let expect: ElemSet = t
            .elements()
            .filter(|&x| x / 9 < 3 && x % 9 < 3)
            .collect();
        assert_eq!(fixed.members(), &expect);
        assert!(fixed_subring(&t.full(), &ActionGroup::trivial(&t)).unwrap().is_full());
        let diag9: ElemSet = t.elements().filter(|&x| x / 9 == x % 9).collect();
        let diag9 = SubringHandle::new(&t, diag9).unwrap();
        let fd = fixed_subring(&diag9, &g).unwrap();
        assert_eq!(fd.labels(), vec!["(0,0)", "(1,1)", "(2,2)"]);
        // R^G = R ∩ T^G
        assert_eq!(fd, diag9.intersect(&fixed).unwrap());
    }

    #[test]
    fn quotient_action_examples() {
        let lim = Limits::default();
        let f9 = build("gf(3,2)");
        let g = group(&f9, &["frobenius"]);
        let (q, h) = quotient_action(&Ideal::zero(&f9.full()), &g, &lim).unwrap();
        assert_eq!(q.ring().order(), 9);
        assert_eq!(h.order(), 2);

        let t = build("idealization(gf(3,2),self)");
        let g = group(&t, &["componentwise(frobenius)"]);
        let nil = radical(&Ideal::zero(&t.full()));
        let (q, h) = quotient_action(&nil, &g, &lim).unwrap();
        assert!(q.ring().is_field());
        let qr = q.ring();
        let frob = builtin(qr, "frobenius").unwrap();
        assert_eq!(h.generators()[0], frob);

        let t = build("prod(gf(3,1),gf(3,1))");
        let g = group(&t, &["swap"]);
        let left = ideal_generated(&t.full(), [t.index_of("(1,0)").unwrap()]).unwrap();
        assert!(matches!(
            quotient_action(&left, &g, &lim),
            Err(RingError::OrbitNotSingleton(_))
        ));
    }

    #[test]
    fn fixed_quotient_examples() {
        let lim = Limits::default();
        let f9 = build("gf(3,2)");
        let g = group(&f9, &["frobenius"]);
        let rep = fixed_quotient_iso_check(&f9.full(), &Ideal::zero(&f9.full()), &g, &lim).unwrap();
        assert_eq!(rep.isomorphism, Some(true));
        assert_eq!(rep.witness_map.len(), 3);

        let t = build("prod(gf(3,2),gf(3,2))");
        let g = group(&t, &["componentwise(frobenius)"]);
        let diag9: ElemSet = t.elements().filter(|&x| x / 9 == x % 9).collect();
        let diag9 = SubringHandle::new(&t, diag9).unwrap();
        let rep = fixed_quotient_iso_check(&diag9, &Ideal::zero(&diag9), &g, &lim).unwrap();
        assert_eq!(rep.isomorphism, Some(true));

        let f4 = build("gf(2,2)");
        let g = group(&f4, &["frobenius"]);
        let rep = fixed_quotient_iso_check(&f4.full(), &Ideal::zero(&f4.full()), &g, &lim).unwrap();
        assert_eq!(rep.isomorphism, None);
        assert!(!rep.hypotheses[2].holds);
    }

    #[test]
    fn symmetrization_trivial_and_full_group() {
        let t = build("gf(2,6)");
        let g = group(&t, &["frobenius(2)"]);
        assert_eq!(g.order(), 3);
        let f8 = fixed_subring(&t.full(), &group(&t, &["frobenius(3)"])).unwrap();
        let tg = fixed_subring(&t.full(), &g).unwrap();
        // all coefficients already fixed
        let one = t.one();
        let u = tg.iter().find(|&x| x != one && x != t.zero()).unwrap();
        let out = symmetrize_representation(u, &[(one, u)], &f8, &g, SymmetrizeMode::Orbit).unwrap();
        assert_eq!(
            out,
            SymmetrizeOutcome::Certificate(SymmetrizationCertificate {
                mode: SymmetrizeMode::Orbit,
                multiplier: 1,
                terms: vec![(1, one)],
            })
        );
        // a non-fixed coefficient split as r + (t - r)
        let r = f8.iter().find(|&x| !g.fixes(x)).unwrap();
        let target = tg.iter().find(|&x| x != t.zero()).unwrap();
        let rest = t.sub(target, r);
        assert!(f8.contains(rest));
        let terms = [(r, one), (rest, one)];
        for mode in [SymmetrizeMode::Orbit, SymmetrizeMode::FullGroup] {
            match symmetrize_representation(target, &terms, &f8, &g, mode).unwrap() {
                SymmetrizeOutcome::Certificate(c) => {
                    if mode == SymmetrizeMode::FullGroup {
                        assert_eq!(c.multiplier, 3);
                    }
                    verify_certificate(target, &terms, &f8, &g, &c).unwrap();
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
