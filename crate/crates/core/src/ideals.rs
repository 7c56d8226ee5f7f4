//! Ideals of a finite ring or of one of its subrings, prime structure,
//! colon and conductor ideals, and quotient rings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::action::Automorphism;
use crate::error::{Result, RingError};
use crate::expr::Construction;
use crate::ring::{ElemSet, FiniteRing, Limits, Shape, SubringHandle};

/// An ideal of the carrier subring (possibly the whole ambient ring).
#[derive(Clone)]
pub struct Ideal {
    carrier: SubringHandle,
    members: ElemSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.labels())
    }
}

/// Serializes as the sorted list of member labels.
impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(serializer)
    }
}

impl Ideal {
    /// Validates the ideal axioms relative to `carrier`.
    pub fn new(carrier: &SubringHandle, members: ElemSet) -> Result<Self> {
        let ring = carrier.ring();
        if !members.is_subset(carrier.members()) {
            return Err(RingError::NotIdeal("members outside the carrier".into()));
        }
        if !members.contains(&ring.zero()) {
            return Err(RingError::NotIdeal("missing zero".into()));
        }
        for &a in &members {
            for &b in &members {
                if !members.contains(&ring.add(a, b)) {
                    return Err(RingError::NotIdeal(format!(
                        "not closed under addition at ({}, {})",
                        ring.label(a),
                        ring.label(b)
                    )));
                }
            }
            for r in carrier.iter() {
                if !members.contains(&ring.mul(r, a)) {
                    return Err(RingError::NotIdeal(format!(
                        "does not absorb {} * {}",
                        ring.label(r),
                        ring.label(a)
                    )));
                }
            }
        }
        Ok(Self {
            carrier: carrier.clone(),
            members,
        })
    }

    pub(crate) fn new_unchecked(carrier: &SubringHandle, members: ElemSet) -> Self {
        Self {
            carrier: carrier.clone(),
            members,
        }
    }

    pub fn zero(carrier: &SubringHandle) -> Self {
        Self::new_unchecked(carrier, [carrier.ring().zero()].into())
    }

    pub fn unit(carrier: &SubringHandle) -> Self {
        Self::new_unchecked(carrier, carrier.members().clone())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.carrier.ring()
    }

    pub fn carrier(&self) -> &SubringHandle {
        &self.carrier
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ring().labels_of(&self.members)
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.carrier.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Prime by definition: proper, and `ab ∈ I` forces `a ∈ I` or `b ∈ I`.
    pub fn is_prime(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let ring = self.ring();
        let outside: Vec<usize> = self.carrier.iter().filter(|x| !self.contains(*x)).collect();
        outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !self.contains(ring.mul(a, b))))
    }

    /// Maximal iff the quotient is a field: every `a ∉ I` has `b` with `ab − 1 ∈ I`.
    pub fn is_maximal(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let ring = self.ring();
        let one = ring.one();
        self.carrier.iter().filter(|x| !self.contains(*x)).all(|a| {
            self.carrier
                .iter()
                .any(|b| self.contains(ring.sub(ring.mul(a, b), one)))
        })
    }

    /// `I ∩ S` as an ideal of the subring `S ⊆ carrier`.
    pub fn contract(&self, sub: &SubringHandle) -> Result<Ideal> {
        if !sub.is_subset_of(&self.carrier) {
            return Err(RingError::Invalid(
                "contraction target is not a subring of the carrier".into(),
            ));
        }
        Ok(Ideal::new_unchecked(
            sub,
            self.members.intersection(sub.members()).copied().collect(),
        ))
    }

    /// `I ∩ J`, both ideals of the same carrier.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_carrier(other)?;
        Ok(Ideal::new_unchecked(
            &self.carrier,
            self.members.intersection(&other.members).copied().collect(),
        ))
    }

    /// `I + J`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_carrier(other)?;
        let ring = self.ring();
        let members = self
            .members
            .iter()
            .flat_map(|&a| other.members.iter().map(move |&b| ring.add(a, b)))
            .collect();
        Ok(Ideal::new_unchecked(&self.carrier, members))
    }

    /// `IJ`: additive closure of all products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_carrier(other)?;
        let ring = self.ring();
        let prods = self
            .members
            .iter()
            .flat_map(|&a| other.members.iter().map(move |&b| ring.mul(a, b)));
        Ok(Ideal::new_unchecked(&self.carrier, additive_closure(ring, prods)))
    }

    /// `I·S`: the ideal generated by `I` in a larger carrier `S`.
    pub fn extend_to(&self, outer: &SubringHandle) -> Result<Ideal> {
        if !self.carrier.is_subset_of(outer) {
            return Err(RingError::Invalid("extension target does not contain the carrier".into()));
        }
        ideal_generated(outer, self.members.iter().copied())
    }

    fn same_carrier(&self, other: &Ideal) -> Result<()> {
        self.carrier.same_ring(&other.carrier)?;
        if self.carrier != other.carrier {
            return Err(RingError::Invalid("ideals of different subrings".into()));
        }
        Ok(())
    }
}

fn additive_closure(ring: &FiniteRing, seed: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut seen = vec![false; ring.order()];
    let mut list = vec![ring.zero()];
    seen[ring.zero()] = true;
    for s in seed {
        if !seen[s] {
            seen[s] = true;
            list.push(s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = ring.add(x, list[j]);
            if !seen[y] {
                seen[y] = true;
                list.push(y);
            }
        }
        i += 1;
    }
    list.into_iter().collect()
}

/// Smallest ideal of `carrier` containing `gens`.
pub fn ideal_generated(carrier: &SubringHandle, gens: impl IntoIterator<Item = usize>) -> Result<Ideal> {
    let ring = carrier.ring();
    let gens: Vec<usize> = gens.into_iter().collect();
    if let Some(&g) = gens.iter().find(|g| !carrier.contains(**g)) {
        return Err(RingError::Invalid(format!(
            "generator {} is outside the ring",
            ring.label(g)
        )));
    }
    let prods = gens
        .iter()
        .flat_map(|&g| carrier.iter().map(move |r| ring.mul(r, g)));
    Ok(Ideal::new_unchecked(carrier, additive_closure(ring, prods)))
}

/// Every ideal of `carrier`: principal ideals closed under sums, sorted by
/// size and then by members.
pub fn all_ideals(carrier: &SubringHandle, limits: &Limits) -> Result<Vec<Ideal>> {
    limits.check_ring(carrier.len())?;
    let ring = carrier.ring();
    let mut seen: BTreeSet<ElemSet> = BTreeSet::new();
    let mut list: Vec<ElemSet> = Vec::new();
    for s in carrier.iter() {
        let principal: ElemSet = carrier.iter().map(|r| ring.mul(r, s)).collect();
        if seen.insert(principal.clone()) {
            list.push(principal);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let sum: ElemSet = list[i]
                .iter()
                .flat_map(|&a| list[j].iter().map(move |&b| ring.add(a, b)))
                .collect();
            if seen.insert(sum.clone()) {
                list.push(sum);
            }
        }
        i += 1;
    }
    let mut ideals: Vec<Ideal> = list
        .into_iter()
        .map(|m| Ideal::new_unchecked(carrier, m))
        .collect();
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(ideals)
}

/// Prime ideals of `carrier`.
pub fn spec(carrier: &SubringHandle, limits: &Limits) -> Result<Vec<Ideal>> {
    Ok(all_ideals(carrier, limits)?
        .into_iter()
        .filter(Ideal::is_prime)
        .collect())
}

/// Maximal ideals of `carrier`.
pub fn max_ideals(carrier: &SubringHandle, limits: &Limits) -> Result<Vec<Ideal>> {
    Ok(all_ideals(carrier, limits)?
        .into_iter()
        .filter(Ideal::is_maximal)
        .collect())
}

/// `{r : r^n ∈ I for some n ≤ |R|}`; the power sequence of an element
/// cycles within |R| steps.
pub fn radical(ideal: &Ideal) -> Ideal {
    let ring = ideal.ring();
    let bound = ideal.carrier.len();
    let members = ideal
        .carrier
        .iter()
        .filter(|&r| {
            let mut x = r;
            for _ in 0..bound {
                if ideal.contains(x) {
                    return true;
                }
                x = ring.mul(x, r);
            }
            false
        })
        .collect();
    Ideal::new_unchecked(&ideal.carrier, members)
}

/// `(R :_R t) = {r ∈ R : rt ∈ R}` for `R` a subring and `t` in the ambient ring.
pub fn colon(inner: &SubringHandle, t: usize) -> Ideal {
    let ring = inner.ring();
    let members = inner.iter().filter(|&r| inner.contains(ring.mul(r, t))).collect();
    Ideal::new_unchecked(inner, members)
}

/// `(I :_R j) = {r ∈ R : rj ∈ I}`.
pub fn ideal_quotient(ideal: &Ideal, j: usize) -> Ideal {
    let ring = ideal.ring();
    let members = ideal
        .carrier
        .iter()
        .filter(|&r| ideal.contains(ring.mul(r, j)))
        .collect();
    Ideal::new_unchecked(&ideal.carrier, members)
}

/// The conductor `(R :_R T) = {r ∈ R : rT ⊆ R}`.
pub fn conductor(inner: &SubringHandle, outer: &SubringHandle) -> Result<Ideal> {
    if !inner.is_subset_of(outer) {
        return Err(RingError::Invalid("inner ring is not contained in the outer ring".into()));
    }
    let ring = inner.ring();
    let members = inner
        .iter()
        .filter(|&r| outer.iter().all(|t| inner.contains(ring.mul(r, t))))
        .collect();
    Ok(Ideal::new_unchecked(inner, members))
}

/// `σ(I)`. When `I` lives in a proper subring `R`, `σ(R) ⊆ R` is required.
pub fn ideal_image(sigma: &Automorphism, ideal: &Ideal) -> Result<Ideal> {
    if !Arc::ptr_eq(sigma.ring(), ideal.ring()) {
        return Err(RingError::RingMismatch);
    }
    if let Some(x) = ideal.carrier.iter().find(|&x| !ideal.carrier.contains(sigma.apply(x))) {
        return Err(RingError::NotInvariant(format!(
            "{} maps outside the subring",
            ideal.ring().label(x)
        )));
    }
    let members = ideal.members.iter().map(|&x| sigma.apply(x)).collect();
    Ok(Ideal::new_unchecked(&ideal.carrier, members))
}

/// `S/I` as a standalone ring, with the projection from ambient indices.
/// Cosets are numbered by their smallest ambient index and labelled `[rep]`.
pub struct QuotientRing {
    ring: Arc<FiniteRing>,
    ideal: Ideal,
    proj: HashMap<usize, usize>,
    reps: Vec<usize>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing(order {}, by {:?})", self.reps.len(), self.ideal)
    }
}

impl QuotientRing {
    pub fn new(ideal: &Ideal) -> Result<Self> {
        let ambient = ideal.ring();
        let mut proj = HashMap::new();
        let mut reps = Vec::new();
        for x in ideal.carrier.iter() {
            if proj.contains_key(&x) {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &i in &ideal.members {
                proj.insert(ambient.add(x, i), c);
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", ambient.label(r))).collect();
        let ring = FiniteRing::from_fn(
            labels,
            proj[&ambient.zero()],
            proj[&ambient.one()],
            Construction::Internal(format!(
                "quotient of {} by {{{}}}",
                ambient.construction(),
                ideal.labels().join(";")
            )),
            Shape::Plain,
            |a, b| proj[&ambient.add(reps[a], reps[b])],
            |a, b| proj[&ambient.mul(reps[a], reps[b])],
        );
        Ok(Self {
            ring: Arc::new(ring),
            ideal: ideal.clone(),
            proj,
            reps,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub(crate) fn into_ring(self) -> FiniteRing {
        Arc::try_unwrap(self.ring).unwrap_or_else(|arc| {
            let r = &*arc;
            FiniteRing::from_fn(
                r.labels().to_vec(),
                r.zero(),
                r.one(),
                r.construction().clone(),
                Shape::Plain,
                |a, b| r.add(a, b),
                |a, b| r.mul(a, b),
            )
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Coset of an ambient element; `None` outside the carrier.
    pub fn project(&self, x: usize) -> Option<usize> {
        self.proj.get(&x).copied()
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }
}

/// The map `x + I ↦ x + J` from `A/I` to `B/J`, defined when `A ⊆ B` and
/// `I ⊆ J`. Returned as a coset-index table.
pub fn natural_map(from: &QuotientRing, to: &QuotientRing) -> Result<Vec<usize>> {
    if !from.ideal.carrier.is_subset_of(&to.ideal.carrier) {
        return Err(RingError::Invalid("source carrier not contained in target".into()));
    }
    if !from.ideal.members.is_subset(&to.ideal.members) {
        return Err(RingError::Invalid("source ideal not contained in target ideal".into()));
    }
    Ok(from
        .reps
        .iter()
        .map(|&r| to.project(r).expect("carrier inclusion checked"))
        .collect())
}

/// True when the coset table is a bijection.
pub fn is_bijection(map: &[usize], target_order: usize) -> bool {
    if map.len() != target_order {
        return false;
    }
    let mut hit = vec![false; target_order];
    map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::builtin;
    use crate::expr::Construction;

    fn build(expr: &str) -> Arc<FiniteRing> {
        expr.parse::<Construction>().unwrap().build(&Limits::default()).unwrap()
    }

    fn ideal_of(ring: &Arc<FiniteRing>, labels: &[&str]) -> Ideal {
        let members = labels.iter().map(|l| ring.index_of(l).unwrap()).collect();
        Ideal::new(&ring.full(), members).unwrap()
    }

    #[test]
    fn generated_ideals() {
        let z8 = build("zmod(8)");
        let full = z8.full();
        assert_eq!(ideal_generated(&full, [0]).unwrap().labels(), vec!["0"]);
        assert_eq!(ideal_generated(&full, [4]).unwrap().labels(), vec!["0", "4"]);
        let t = build("prod(gf(3,1),gf(3,1))");
        let i = ideal_generated(&t.full(), [t.index_of("(1,0)").unwrap()]).unwrap();
        assert_eq!(i.labels(), vec!["(0,0)", "(1,0)", "(2,0)"]);
    }

    #[test]
    fn spec_examples() {
        let lim = Limits::default();
        let f4 = build("gf(2,2)");
        let s = spec(&f4.full(), &lim).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].is_zero());

        let z12 = build("zmod(12)");
        let primes = spec(&z12.full(), &lim).unwrap();
        let expected2 = ideal_generated(&z12.full(), [2]).unwrap();
        let expected3 = ideal_generated(&z12.full(), [3]).unwrap();
        assert_eq!(primes, vec![expected3.clone(), expected2.clone()]);
        assert_eq!(max_ideals(&z12.full(), &lim).unwrap(), primes);

        let t = build("idealization(gf(3,1),self)");
        let primes = spec(&t.full(), &lim).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].labels(), vec!["(0,0)", "(0,1)", "(0,2)"]);
    }

    #[test]
    fn radical_examples() {
        let z8 = build("zmod(8)");
        let r = radical(&ideal_of(&z8, &["0", "4"]));
        assert_eq!(r.labels(), vec!["0", "2", "4", "6"]);
        let f9 = build("gf(3,2)");
        assert!(radical(&Ideal::zero(&f9.full())).is_zero());
        let t = build("idealization(gf(3,1),self)");
        assert_eq!(
            radical(&Ideal::zero(&t.full())).labels(),
            vec!["(0,0)", "(0,1)", "(0,2)"]
        );
    }

    #[test]
    fn conductor_examples() {
        let t = build("prod(gf(5,1),gf(5,1))");
        let diag = crate::ring::subring_closure(&t, []);
        assert!(conductor(&diag, &t.full()).unwrap().is_zero());
        assert_eq!(conductor(&diag, &diag).unwrap().members(), diag.members());

        let t = build("idealization(gf(3,2),self)");
        let base: ElemSet = t
            .elements()
            .filter(|&x| t.label(x).ends_with(",0)"))
            .collect();
        let base = SubringHandle::new(&t, base).unwrap();
        assert!(conductor(&base, &t.full()).unwrap().is_zero());
    }

    #[test]
    fn conductor_is_intersection_of_colons() {
        for expr in ["prod(gf(3,1),gf(3,1))", "idealization(zmod(4),quot{2})", "gf(2,4)"] {
            let t = build(expr);
            let r = crate::ring::subring_closure(&t, []);
            let c = conductor(&r, &t.full()).unwrap();
            let mut meet = r.members().clone();
            for x in t.elements() {
                let col = colon(&r, x);
                meet = meet.intersection(col.members()).copied().collect();
            }
            assert_eq!(&meet, c.members(), "{expr}");
            Ideal::new(&r, c.members().clone()).unwrap();
        }
    }

    #[test]
    fn images_under_automorphisms() {
        let t = build("prod(gf(3,1),gf(3,1))");
        let id = Automorphism::identity(&t);
        let i = ideal_of(&t, &["(0,0)", "(1,0)", "(2,0)"]);
        assert_eq!(ideal_image(&id, &i).unwrap(), i);
        let swap = builtin(&t, "swap").unwrap();
        assert_eq!(
            ideal_image(&swap, &i).unwrap().labels(),
            vec!["(0,0)", "(0,1)", "(0,2)"]
        );
        let t9 = build("prod(gf(3,2),gf(3,2))");
        let frob = builtin(&t9, "componentwise(frobenius)").unwrap();
        let left = ideal_generated(&t9.full(), [t9.index_of("(1,0)").unwrap()]).unwrap();
        assert_eq!(ideal_image(&frob, &left).unwrap(), left);
    }

    #[test]
    fn quotient_by_nilradical() {
        let t = build("idealization(gf(3,2),self)");
        let n = radical(&Ideal::zero(&t.full()));
        let q = QuotientRing::new(&n).unwrap();
        assert_eq!(q.ring().order(), 9);
        assert!(q.ring().is_field());
        q.ring().check_axioms().unwrap();
    }
}
