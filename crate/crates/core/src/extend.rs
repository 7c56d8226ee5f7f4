//! Extensions `R ⊆ T` of finite rings, both given as subrings of one ambient
//! ring: minimality, the inert/decomposed/ramified trichotomy, critical
//! ideals, intermediate rings, integrality, Gabriel filters, INC and normal
//! pairs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{fixed_subring, ActionGroup};
use crate::check::Check;
use crate::error::{Result, RingError};
use crate::ideals::{
    all_ideals, colon, conductor, ideal_generated, ideal_quotient, is_bijection, max_ideals,
    natural_map, radical, spec, Ideal, QuotientRing,
};
use crate::ring::{closure_set, ElemSet, FiniteRing, Limits, SubringHandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtensionKind {
    NotAnExtension,
    TrivialEqual,
    NotMinimal,
    MinimalInert,
    MinimalDecomposed,
    MinimalRamified,
    MinimalIntegrallyClosed,
}

impl ExtensionKind {
    pub fn is_minimal(self) -> bool {
        matches!(
            self,
            Self::MinimalInert
                | Self::MinimalDecomposed
                | Self::MinimalRamified
                | Self::MinimalIntegrallyClosed
        )
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub kind: ExtensionKind,
    /// `(R :_R T)`, absent only when `R ⊄ T`.
    pub conductor: Option<Ideal>,
    /// The conductor again, when the extension is minimal.
    pub crucial_max: Option<Ideal>,
    /// Inert: the conductor as an ideal of T. Decomposed: N₁, N₂. Ramified: N.
    pub witnesses: Vec<Ideal>,
    pub critical_ideal: Option<Ideal>,
    /// `dim_{R/C} T/C` for inert and ramified extensions.
    pub residue_dimension: Option<usize>,
    pub minimal_by_oracle: bool,
}

fn check_nested(inner: &SubringHandle, outer: &SubringHandle) -> Result<()> {
    inner.same_ring(outer)?;
    if !inner.is_subset_of(outer) {
        return Err(RingError::Invalid("inner ring is not contained in the outer ring".into()));
    }
    Ok(())
}

fn with(inner: &SubringHandle, u: usize) -> ElemSet {
    closure_set(inner.ring(), inner.iter().chain([u]))
}

/// Brute-force oracle: `R[u] = T` for every `u ∈ T∖R`. False when `R = T`.
pub fn is_minimal_extension(inner: &SubringHandle, outer: &SubringHandle) -> Result<bool> {
    check_nested(inner, outer)?;
    if inner == outer {
        return Ok(false);
    }
    Ok(outer
        .iter()
        .filter(|&u| !inner.contains(u))
        .all(|u| &with(inner, u) == outer.members()))
}

/// Greedy basis size of `T/C` over the image of `R`; `R/C` must be a field.
fn residue_dimension(q: &QuotientRing, inner: &SubringHandle) -> usize {
    let qr = q.ring();
    let k: BTreeSet<usize> = inner.iter().filter_map(|r| q.project(r)).collect();
    let mut span: BTreeSet<usize> = [qr.zero()].into();
    let mut dim = 0;
    for x in qr.elements() {
        if span.contains(&x) {
            continue;
        }
        dim += 1;
        span = span
            .iter()
            .flat_map(|&s| k.iter().map(move |&c| qr.add(s, qr.mul(c, x))))
            .collect();
    }
    dim
}

fn quotient_iso(small: &QuotientRing, big: &QuotientRing) -> Result<bool> {
    Ok(is_bijection(&natural_map(small, big)?, big.ring().order()))
}

/// Classifies `R ⊆ T`. Minimality comes from the brute-force oracle; the
/// case conditions are evaluated independently and must single out exactly
/// one case on a minimal extension and none otherwise.
pub fn classify_extension(
    inner: &SubringHandle,
    outer: &SubringHandle,
    limits: &Limits,
) -> Result<ExtensionReport> {
    inner.same_ring(outer)?;
    let mut report = ExtensionReport {
        kind: ExtensionKind::NotAnExtension,
        conductor: None,
        crucial_max: None,
        witnesses: vec![],
        critical_ideal: None,
        residue_dimension: None,
        minimal_by_oracle: false,
    };
    if !inner.is_subset_of(outer) {
        return Ok(report);
    }
    let c = conductor(inner, outer)?;
    report.conductor = Some(c.clone());
    if inner == outer {
        report.kind = ExtensionKind::TrivialEqual;
        return Ok(report);
    }
    let minimal = is_minimal_extension(inner, outer)?;
    report.minimal_by_oracle = minimal;
    report.critical_ideal = critical_ideal(inner, outer)?;

    let mut matched: Vec<(ExtensionKind, Vec<Ideal>, Option<usize>)> = Vec::new();
    if c.is_maximal() {
        let c_t = Ideal::new(outer, c.members().clone())
            .map_err(|e| RingError::Inconsistent(format!("conductor is not an ideal of T: {e}")))?;
        let r_mod_c = QuotientRing::new(&c)?;
        let t_mod_c = QuotientRing::new(&c_t)?;

        if c_t.is_maximal() {
            let qr = t_mod_c.ring();
            let k: ElemSet = inner.iter().filter_map(|r| t_mod_c.project(r)).collect();
            let k = SubringHandle::new(qr, k)?;
            if is_minimal_extension(&k, &qr.full())? {
                let dim = residue_dimension(&t_mod_c, inner);
                matched.push((ExtensionKind::MinimalInert, vec![c_t.clone()], Some(dim)));
            }
        }

        let over: Vec<Ideal> = max_ideals(outer, limits)?
            .into_iter()
            .filter(|n| c.members().is_subset(n.members()))
            .collect();
        for (i, n1) in over.iter().enumerate() {
            for n2 in &over[i + 1..] {
                if n1.members().intersection(n2.members()).copied().collect::<ElemSet>()
                    != *c.members()
                {
                    continue;
                }
                if quotient_iso(&r_mod_c, &QuotientRing::new(n1)?)?
                    && quotient_iso(&r_mod_c, &QuotientRing::new(n2)?)?
                {
                    matched.push((
                        ExtensionKind::MinimalDecomposed,
                        vec![n1.clone(), n2.clone()],
                        None,
                    ));
                }
            }
        }

        for n in &over {
            if n.members() == c.members() {
                continue;
            }
            let n_sq = n.product(n)?;
            if !n_sq.members().is_subset(c.members()) {
                continue;
            }
            let dim = residue_dimension(&t_mod_c, inner);
            if dim == 2 && quotient_iso(&r_mod_c, &QuotientRing::new(n)?)? {
                matched.push((ExtensionKind::MinimalRamified, vec![n.clone()], Some(dim)));
            }
        }
    } else if minimal {
        return Err(RingError::Inconsistent(format!(
            "minimal extension whose conductor {:?} is not maximal",
            c.labels()
        )));
    }

    match (minimal, matched.len()) {
        (false, 0) => report.kind = ExtensionKind::NotMinimal,
        (true, 1) => {
            let (kind, witnesses, dim) = matched.pop().expect("one case");
            report.kind = kind;
            report.witnesses = witnesses;
            report.residue_dimension = dim;
            report.crucial_max = Some(c);
        }
        (m, n) => {
            let kinds: Vec<_> = matched.iter().map(|(k, _, _)| k.to_string()).collect();
            return Err(RingError::Inconsistent(format!(
                "oracle says minimal = {m} but {n} cases matched {kinds:?}"
            )));
        }
    }
    Ok(report)
}

/// The common value of `Rad_R((R :_R t))` over `t ∈ T∖R`, if any.
/// A critical ideal that fails to be prime is reported as an inconsistency.
pub fn critical_ideal(inner: &SubringHandle, outer: &SubringHandle) -> Result<Option<Ideal>> {
    check_nested(inner, outer)?;
    let mut common: Option<Ideal> = None;
    for t in outer.iter().filter(|&t| !inner.contains(t)) {
        let rad = radical(&colon(inner, t));
        match &common {
            None => common = Some(rad),
            Some(c) if *c == rad => {}
            Some(_) => return Ok(None),
        }
    }
    if let Some(c) = &common {
        if !c.is_prime() {
            return Err(RingError::Inconsistent(format!(
                "critical ideal {:?} is not prime",
                c.labels()
            )));
        }
    }
    Ok(common)
}

/// Every subring `S` with `R ⊆ S ⊆ T`, ordered by size then members.
pub fn intermediate_rings(
    inner: &SubringHandle,
    outer: &SubringHandle,
    limits: &Limits,
) -> Result<Vec<SubringHandle>> {
    check_nested(inner, outer)?;
    if outer.len() > limits.max_intermediate_order {
        return Err(RingError::CapExceeded {
            what: "intermediate enumeration",
            order: outer.len(),
            cap: limits.max_intermediate_order,
        });
    }
    let ring = inner.ring();
    let mut seen: BTreeSet<ElemSet> = [inner.members().clone()].into();
    let mut frontier = vec![inner.members().clone()];
    while let Some(s) = frontier.pop() {
        for u in outer.iter().filter(|u| !s.contains(u)) {
            let next = closure_set(ring, s.iter().copied().chain([u]));
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<ElemSet> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out
        .into_iter()
        .map(|m| SubringHandle::new_unchecked(ring, m))
        .collect())
}

/// `x^d + Σ_{i<d} lower[i]·x^i` vanishing at `element`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonicWitness {
    pub element: usize,
    pub lower: Vec<usize>,
    /// True when the witness came from the power cycle, not the search.
    pub fallback: bool,
}

impl MonicWitness {
    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    pub fn holds(&self, ring: &FiniteRing) -> bool {
        let t = self.element;
        let mut acc = ring.pow(t, self.degree() as u64);
        for (i, &c) in self.lower.iter().enumerate() {
            acc = ring.add(acc, ring.mul(c, ring.pow(t, i as u64)));
        }
        acc == ring.zero()
    }

    pub fn display(&self, ring: &FiniteRing) -> String {
        let mut parts = vec![format!("x^{}", self.degree())];
        for (i, &c) in self.lower.iter().enumerate().rev() {
            if c != ring.zero() {
                parts.push(format!("({})x^{i}", ring.label(c)));
            }
        }
        parts.join(" + ")
    }
}

/// Evaluations allowed per element before falling back to the power cycle.
pub const MONIC_SEARCH_BUDGET: usize = 1 << 20;

/// Exhaustive search for a monic polynomial over `base` of degree at most
/// `degree_cap` vanishing at `t`, lowest degree and lexicographically
/// smallest coefficients first.
pub fn monic_search(base: &SubringHandle, t: usize, degree_cap: usize) -> Option<MonicWitness> {
    let ring = base.ring();
    let coeffs: Vec<usize> = base.iter().collect();
    let powers: Vec<usize> = (0..=degree_cap as u64).map(|i| ring.pow(t, i)).collect();
    let mut spent = 0usize;
    for d in 1..=degree_cap {
        let mut digits = vec![0usize; d];
        loop {
            spent += 1;
            if spent > MONIC_SEARCH_BUDGET {
                return None;
            }
            let value = digits
                .iter()
                .enumerate()
                .fold(powers[d], |acc, (i, &j)| ring.add(acc, ring.mul(coeffs[j], powers[i])));
            if value == ring.zero() {
                return Some(MonicWitness {
                    element: t,
                    lower: digits.iter().map(|&j| coeffs[j]).collect(),
                    fallback: false,
                });
            }
            let mut pos = 0;
            while pos < d {
                digits[pos] += 1;
                if digits[pos] < coeffs.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
    }
    None
}

/// `t^m − t^n` for the first repeat `t^m = t^n` in the power sequence.
/// Its coefficients lie in the prime subring.
pub fn power_cycle_witness(ring: &FiniteRing, t: usize) -> MonicWitness {
    let mut seen = vec![usize::MAX; ring.order()];
    let mut x = ring.one();
    let mut m = 0;
    while seen[x] == usize::MAX {
        seen[x] = m;
        x = ring.mul(x, t);
        m += 1;
    }
    let n = seen[x];
    let mut lower = vec![ring.zero(); m];
    lower[n] = ring.neg(ring.one());
    MonicWitness {
        element: t,
        lower,
        fallback: true,
    }
}

pub fn monic_witness(base: &SubringHandle, t: usize, degree_cap: usize) -> MonicWitness {
    monic_search(base, t, degree_cap).unwrap_or_else(|| power_cycle_witness(base.ring(), t))
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegralityReport {
    pub integral: bool,
    pub witnesses: Vec<MonicWitness>,
}

/// A monic witness over `R` for every `t ∈ T`, each replayed through the tables.
pub fn is_integral_extension(
    inner: &SubringHandle,
    outer: &SubringHandle,
    degree_cap: usize,
) -> Result<IntegralityReport> {
    check_nested(inner, outer)?;
    let ring = inner.ring();
    let witnesses: Vec<MonicWitness> = outer.iter().map(|t| monic_witness(inner, t, degree_cap)).collect();
    if let Some(w) = witnesses.iter().find(|w| !w.holds(ring)) {
        return Err(RingError::Inconsistent(format!(
            "monic witness for {} does not vanish",
            ring.label(w.element)
        )));
    }
    Ok(IntegralityReport {
        integral: witnesses.len() == outer.len(),
        witnesses,
    })
}

/// Elements of `T` integral over `R`. On finite rings this is all of `T`.
pub fn integral_closure_in(inner: &SubringHandle, outer: &SubringHandle) -> Result<SubringHandle> {
    check_nested(inner, outer)?;
    let ring = inner.ring();
    let members: ElemSet = outer
        .iter()
        .filter(|&t| monic_witness(inner, t, 2).holds(ring))
        .collect();
    if &members != outer.members() {
        return Err(RingError::Inconsistent("finite extension with a non-integral element".into()));
    }
    SubringHandle::new(ring, members)
}

pub fn is_integrally_closed(inner: &SubringHandle, outer: &SubringHandle) -> Result<bool> {
    Ok(&integral_closure_in(inner, outer)? == inner)
}

fn generates_unit(ideal: &Ideal, outer: &SubringHandle) -> Result<bool> {
    Ok(ideal_generated(outer, ideal.members().iter().copied())?.contains(outer.ring().one()))
}

/// `{I ⊆ R : IT = T}`.
pub fn extension_filter(
    inner: &SubringHandle,
    outer: &SubringHandle,
    limits: &Limits,
) -> Result<Vec<Ideal>> {
    check_nested(inner, outer)?;
    let mut out = Vec::new();
    for i in all_ideals(inner, limits)? {
        if generates_unit(&i, outer)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// The three Gabriel filter axioms, each checked over the full ideal lattice
/// of `carrier`. An empty family fails.
pub fn gabriel_axioms(carrier: &SubringHandle, filter: &[Ideal], limits: &Limits) -> Result<Vec<Check>> {
    let lattice = all_ideals(carrier, limits)?;
    let member = |i: &Ideal| filter.contains(i);
    let nonempty = Check::new("filter is nonempty", !filter.is_empty(), "");

    let up = filter.iter().find_map(|i| {
        lattice
            .iter()
            .find(|j| i.is_subset_of(j) && !member(j))
            .map(|j| format!("{:?} ⊆ {:?}", i.labels(), j.labels()))
    });
    let meet = filter.iter().enumerate().find_map(|(a, i)| {
        filter[a..].iter().find_map(|j| {
            let ij = i.intersect(j).ok()?;
            (!member(&ij)).then(|| format!("{:?} ∩ {:?}", i.labels(), j.labels()))
        })
    });
    let colon_axiom = lattice.iter().filter(|i| !member(i)).find_map(|i| {
        filter
            .iter()
            .find(|j| j.members().iter().all(|&x| member(&ideal_quotient(i, x))))
            .map(|j| format!("I = {:?} via J = {:?}", i.labels(), j.labels()))
    });
    Ok(vec![
        nonempty,
        Check::new("(i) closed upward", up.is_none(), up.unwrap_or_default()),
        Check::new("(ii) closed under intersection", meet.is_none(), meet.unwrap_or_default()),
        Check::new("(iii) colon condition", colon_axiom.is_none(), colon_axiom.unwrap_or_default()),
    ])
}

pub fn is_gabriel_filter(carrier: &SubringHandle, filter: &[Ideal], limits: &Limits) -> Result<bool> {
    Ok(gabriel_axioms(carrier, filter, limits)?.iter().all(|c| c.holds))
}

/// `(R :_R t)T = T` for every `t ∈ T`; the first failing `t` otherwise.
pub fn perfect_localization_witness(inner: &SubringHandle, outer: &SubringHandle) -> Result<Option<usize>> {
    check_nested(inner, outer)?;
    for t in outer.iter() {
        if !generates_unit(&colon(inner, t), outer)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

pub fn is_perfect_localization(inner: &SubringHandle, outer: &SubringHandle) -> Result<bool> {
    Ok(perfect_localization_witness(inner, outer)?.is_none())
}

/// For every `I` with `IT = T`, checks `(I ∩ R^G)·T^G = T^G`.
pub fn filter_contraction_check(
    inner: &SubringHandle,
    outer: &SubringHandle,
    group: &ActionGroup,
    limits: &Limits,
) -> Result<Check> {
    let rg = fixed_subring(inner, group)?;
    let tg = fixed_subring(outer, group)?;
    for i in extension_filter(inner, outer, limits)? {
        let small = i.contract(&rg)?;
        if !generates_unit(&small, &tg)? {
            return Ok(Check::new(
                "filter contracts into the fixed filter",
                false,
                format!("I = {:?}, I ∩ R^G = {:?}", i.labels(), small.labels()),
            ));
        }
    }
    Ok(Check::pass("filter contracts into the fixed filter"))
}

/// Every intermediate `S` satisfies INC over `R`: distinct comparable primes
/// of `S` never share a contraction to `R`.
pub fn inc_pair_check(inner: &SubringHandle, outer: &SubringHandle, limits: &Limits) -> Result<Check> {
    let name = "INC holds for every intermediate ring";
    for s in intermediate_rings(inner, outer, limits)? {
        let primes = spec(&s, limits)?;
        let down: Vec<Ideal> = primes.iter().map(|q| q.contract(inner)).collect::<Result<_>>()?;
        for (a, q) in primes.iter().enumerate() {
            for (b, q2) in primes.iter().enumerate() {
                if a != b && q.is_subset_of(q2) && down[a] == down[b] {
                    return Ok(Check::new(
                        name,
                        false,
                        format!("in S = {:?}: {:?} ⊊ {:?}", s.labels(), q.labels(), q2.labels()),
                    ));
                }
            }
        }
    }
    Ok(Check::pass(name))
}

pub fn is_inc_pair(inner: &SubringHandle, outer: &SubringHandle, limits: &Limits) -> Result<bool> {
    Ok(inc_pair_check(inner, outer, limits)?.holds)
}

/// Every intermediate ring is integrally closed in `T`.
pub fn normal_pair_check(inner: &SubringHandle, outer: &SubringHandle, limits: &Limits) -> Result<Check> {
    let name = "every intermediate ring is integrally closed";
    for s in intermediate_rings(inner, outer, limits)? {
        if !is_integrally_closed(&s, outer)? {
            return Ok(Check::new(name, false, format!("S = {:?}", s.labels())));
        }
    }
    Ok(Check::pass(name))
}

pub fn is_normal_pair(inner: &SubringHandle, outer: &SubringHandle, limits: &Limits) -> Result<bool> {
    Ok(normal_pair_check(inner, outer, limits)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use crate::action::{builtin, close_group};
    use crate::expr::Construction;
    use crate::ring::subring_closure;

    fn build(expr: &str) -> Arc<FiniteRing> {
        expr.parse::<Construction>().unwrap().build(&Limits::default()).unwrap()
    }

    fn diag(t: &Arc<FiniteRing>, n: usize) -> SubringHandle {
        SubringHandle::new(t, t.elements().filter(|x| x / n == x % n).collect()).unwrap()
    }

    fn base_of_idealization(t: &Arc<FiniteRing>, n: usize) -> SubringHandle {
        SubringHandle::new(t, t.elements().filter(|x| x % n == 0).collect()).unwrap()
    }

    fn prime(t: &Arc<FiniteRing>) -> SubringHandle {
        subring_closure(t, [])
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn minimality_oracle() {
        let f4 = build("gf(2,2)");
        assert!(is_minimal_extension(&prime(&f4), &f4.full()).unwrap());
        let t = build("prod(gf(5,1),gf(5,1))");
        assert!(is_minimal_extension(&diag(&t, 5), &t.full()).unwrap());
        let f16 = build("gf(2,4)");
        assert!(!is_minimal_extension(&prime(&f16), &f16.full()).unwrap());
        assert!(!is_minimal_extension(&f16.full(), &f16.full()).unwrap());
    }

    #[test]
    fn classification_cases() {
        let f4 = build("gf(2,2)");
        let r = classify_extension(&prime(&f4), &f4.full(), &lim()).unwrap();
        assert_eq!(r.kind, ExtensionKind::MinimalInert);
        assert!(r.conductor.unwrap().is_zero());
        assert_eq!(r.residue_dimension, Some(2));

        let t = build("prod(gf(3,2),gf(3,2))");
        let r = classify_extension(&diag(&t, 9), &t.full(), &lim()).unwrap();
        assert_eq!(r.kind, ExtensionKind::MinimalDecomposed);
        let w: Vec<usize> = r.witnesses.iter().map(|n| n.len()).collect();
        assert_eq!(w, vec![9, 9]);
        assert!(r.witnesses[0].members().iter().all(|x| x % 9 == 0 || x / 9 == 0));

        let t = build("idealization(gf(3,2),self)");
        let r = classify_extension(&base_of_idealization(&t, 9), &t.full(), &lim()).unwrap();
        assert_eq!(r.kind, ExtensionKind::MinimalRamified);
        assert_eq!(r.residue_dimension, Some(2));
        assert_eq!(r.witnesses[0].members(), &(0..9).collect::<ElemSet>());

        let f16 = build("gf(2,4)");
        let r = classify_extension(&prime(&f16), &f16.full(), &lim()).unwrap();
        assert_eq!(r.kind, ExtensionKind::NotMinimal);
        let r = classify_extension(&f16.full(), &f16.full(), &lim()).unwrap();
        assert_eq!(r.kind, ExtensionKind::TrivialEqual);
    }

    #[test]
    fn idealization_minimal_iff_simple() {
        let t = build("idealization(zmod(4),self)");
        let r = classify_extension(&base_of_idealization(&t, 4), &t.full(), &lim()).unwrap();
        assert_eq!(r.kind, ExtensionKind::NotMinimal);
        let t = build("idealization(zmod(4),quot{2})");
        let r = classify_extension(&base_of_idealization(&t, 2), &t.full(), &lim()).unwrap();
        assert_eq!(r.kind, ExtensionKind::MinimalRamified);
    }

    #[test]
    fn critical_ideals() {
        let t = build("prod(gf(3,2),gf(3,2))");
        assert!(critical_ideal(&diag(&t, 9), &t.full()).unwrap().unwrap().is_zero());
        let t = build("idealization(gf(3,2),self)");
        assert!(critical_ideal(&base_of_idealization(&t, 9), &t.full())
            .unwrap()
            .unwrap()
            .is_zero());
        let t = build("prod(prod(gf(2,1),gf(2,1)),gf(2,1))");
        let r = prime(&t);
        let crit = critical_ideal(&r, &t.full()).unwrap();
        // F_2 is a field, every colon is 0 or F_2, radical the same
        assert_eq!(crit.map(|c| c.is_zero()), Some(true));
        assert!(!is_minimal_extension(&r, &t.full()).unwrap());
    }

    #[test]
    fn intermediates() {
        let f16 = build("gf(2,4)");
        let all = intermediate_rings(&prime(&f16), &f16.full(), &lim()).unwrap();
        assert_eq!(all.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![2, 4, 16]);
        let f4 = build("gf(2,2)");
        assert_eq!(intermediate_rings(&prime(&f4), &f4.full(), &lim()).unwrap().len(), 2);
        assert_eq!(intermediate_rings(&f4.full(), &f4.full(), &lim()).unwrap().len(), 1);
        let f256 = build("gf(2,8)");
        assert!(matches!(
            intermediate_rings(&prime(&f256), &f256.full(), &lim()),
            Err(RingError::CapExceeded { .. })
        ));
    }

    #[test]
    fn integrality() {
        let f9 = build("gf(3,2)");
        let rep = is_integral_extension(&prime(&f9), &f9.full(), 2).unwrap();
        assert!(rep.integral);
        assert!(rep.witnesses.iter().all(|w| w.degree() <= 2 && !w.fallback));
        let one = f9.one();
        let w = monic_search(&prime(&f9), one, 3).unwrap();
        assert_eq!(w.degree(), 1);
        let pc = power_cycle_witness(&f9, f9.index_of("a").unwrap());
        assert!(pc.holds(&f9));

        let f4 = build("gf(2,2)");
        assert_eq!(integral_closure_in(&prime(&f4), &f4.full()).unwrap(), f4.full());
        assert!(!is_integrally_closed(&prime(&f4), &f4.full()).unwrap());
        assert!(is_integrally_closed(&f4.full(), &f4.full()).unwrap());
    }

    #[test]
    fn filters_and_localization() {
        let t = build("prod(gf(5,1),gf(5,1))");
        let r = diag(&t, 5);
        let f = extension_filter(&r, &t.full(), &lim()).unwrap();
        assert_eq!(f, vec![Ideal::unit(&r)]);
        assert!(!is_perfect_localization(&r, &t.full()).unwrap());
        assert!(is_perfect_localization(&t.full(), &t.full()).unwrap());
        assert!(is_gabriel_filter(&r, &f, &lim()).unwrap());
        // over a field both {R} and {0, R} satisfy the axioms; the empty family does not
        let both = vec![Ideal::zero(&r), Ideal::unit(&r)];
        assert!(is_gabriel_filter(&r, &both, &lim()).unwrap());
        assert!(!is_gabriel_filter(&r, &[], &lim()).unwrap());
        let z4 = build("zmod(4)");
        let only_zero = vec![Ideal::zero(&z4.full())];
        assert!(!is_gabriel_filter(&z4.full(), &only_zero, &lim()).unwrap());

        let g = close_group(&t, vec![builtin(&t, "swap").unwrap()], &lim()).unwrap();
        assert!(filter_contraction_check(&r, &t.full(), &g, &lim()).unwrap().holds);
    }

    #[test]
    fn inc_and_normal_pairs() {
        let t = build("prod(prod(gf(2,1),gf(2,1)),gf(2,1))");
        assert!(is_inc_pair(&prime(&t), &t.full(), &lim()).unwrap());
        assert!(!is_normal_pair(&prime(&t), &t.full(), &lim()).unwrap());
        assert!(is_normal_pair(&t.full(), &t.full(), &lim()).unwrap());
        let t = build("idealization(zmod(4),quot{2})");
        assert!(is_inc_pair(&prime(&t), &t.full(), &lim()).unwrap());
    }
}
