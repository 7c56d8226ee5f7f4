//! Finite commutative unital rings given by explicit operation tables.
//!
//! Every finite construction (residue rings, Galois fields, products,
//! quotients, idealizations) normalizes to a [`FiniteRing`]. Elements are
//! plain indices into the tables; an index only means something together
//! with the ring it came from, which is why ideals and subrings carry an
//! `Arc` to their ambient ring and refuse to mix with foreign ones.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::expr::Construction;
use crate::poly::{is_prime, FpPoly};

/// A set of element indices of one ring.
pub type ElemSet = BTreeSet<usize>;

/// Size caps for table construction and exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest ring order for which operation tables are built.
    pub max_ring_order: usize,
    /// Largest ambient order for intermediate-ring enumeration.
    pub max_intermediate_order: usize,
    /// Largest group order produced by generator closure.
    pub max_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_ring_order: 4096,
            max_intermediate_order: 64,
            max_group_order: 100_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_ring(&self, order: usize) -> Result<()> {
        if order > self.max_ring_order {
            return Err(RingError::CapExceeded {
                what: "ring",
                order,
                cap: self.max_ring_order,
            });
        }
        Ok(())
    }
}

/// Structural decomposition kept alongside the tables so that automorphisms
/// such as `swap` or `componentwise(...)` can be built from the factors.
#[derive(Clone)]
pub enum Shape {
    Plain,
    /// Index of `(a, b)` is `a * |B| + b`.
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    /// Index of `(r, m)` is `r * |M| + m`.
    Idealization(Arc<FiniteRing>, Arc<FiniteModule>),
}

pub struct FiniteRing {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    construction: Construction,
    shape: Shape,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("construction", &self.construction.to_string())
            .field("order", &self.order())
            .finish()
    }
}

fn normalize_label(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

impl FiniteRing {
    /// Builds tables from trusted operation formulas.
    pub(crate) fn from_fn(
        labels: Vec<String>,
        zero: usize,
        one: usize,
        construction: Construction,
        shape: Shape,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = labels.len();
        let mut add_t = vec![0u32; n * n];
        let mut mul_t = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let s = add(a, b) as u32;
                let m = mul(a, b) as u32;
                add_t[a * n + b] = s;
                add_t[b * n + a] = s;
                mul_t[a * n + b] = m;
                mul_t[b * n + a] = m;
            }
        }
        Self::assemble(labels, add_t, mul_t, zero, one, construction, shape)
    }

    fn assemble(
        labels: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        construction: Construction,
        shape: Shape,
    ) -> Self {
        let n = labels.len();
        let mut neg = vec![0u32; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| add[a * n + b] as usize == zero) {
                neg[a] = b as u32;
            }
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (normalize_label(l), i))
            .collect();
        Self {
            labels,
            index,
            add,
            mul,
            neg,
            zero,
            one,
            construction,
            shape,
        }
    }

    /// Builds a ring from user-supplied tables (row-major, `order * order`)
    /// and validates every ring axiom exhaustively.
    pub fn from_tables(
        labels: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        construction: Construction,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || add.len() != n * n || mul.len() != n * n || zero >= n || one >= n {
            return Err(RingError::Invalid("table dimensions do not match".into()));
        }
        if add.iter().chain(mul.iter()).any(|&x| x >= n) {
            return Err(RingError::Invalid("table entry out of range".into()));
        }
        let ring = Self::assemble(
            labels,
            add.into_iter().map(|x| x as u32).collect(),
            mul.into_iter().map(|x| x as u32).collect(),
            zero,
            one,
            construction,
            Shape::Plain,
        );
        ring.check_axioms()?;
        Ok(ring)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut exp: u64) -> usize {
        let mut acc = self.one;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `n * a` as repeated addition.
    pub fn scalar(&self, mut n: u64, a: usize) -> usize {
        let mut acc = self.zero;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of the integer `n` in the ring.
    pub fn from_int(&self, n: u64) -> usize {
        self.scalar(n, self.one)
    }

    pub fn sum(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    pub fn product(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.one, |acc, x| self.mul(acc, x))
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> u64 {
        let mut x = self.one;
        let mut n = 1u64;
        while x != self.zero {
            x = self.add(x, self.one);
            n += 1;
        }
        n
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    pub fn is_field(&self) -> bool {
        self.order() > 1 && self.elements().all(|a| a == self.zero || self.is_unit(a))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(&normalize_label(label))
            .copied()
            .ok_or_else(|| RingError::UnknownLabel(label.to_string()))
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub(crate) fn set_construction(&mut self, c: Construction) {
        self.construction = c;
    }

    pub fn labels_of<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Vec<String> {
        set.into_iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Exhaustive check of the commutative unital ring axioms over all
    /// ordered pairs and triples.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        let fail = |axiom, witness: String| Err(RingError::RingAxiom { axiom, witness });
        if n > 1 && self.zero == self.one {
            return fail("zero differs from one", self.labels[self.zero].clone());
        }
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("additive identity", self.labels[a].clone());
            }
            if self.mul(a, self.one) != a {
                return fail("multiplicative identity", self.labels[a].clone());
            }
            if self.add(a, self.neg(a)) != self.zero {
                return fail("additive inverse", self.labels[a].clone());
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", self.pair(a, b));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", self.pair(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab_sum = self.add(a, b);
                let ab_prod = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab_sum, c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", self.triple(a, b, c));
                    }
                    if self.mul(ab_prod, c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", self.triple(a, b, c));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(ab_prod, self.mul(a, c)) {
                        return fail("distributivity", self.triple(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn pair(&self, a: usize, b: usize) -> String {
        format!("({}, {})", self.labels[a], self.labels[b])
    }

    fn triple(&self, a: usize, b: usize, c: usize) -> String {
        format!("({}, {}, {})", self.labels[a], self.labels[b], self.labels[c])
    }

    /// The handle covering every element.
    pub fn full(self: &Arc<Self>) -> SubringHandle {
        SubringHandle {
            ring: Arc::clone(self),
            members: self.elements().collect(),
        }
    }
}

/// ℤ/n with residue labels `0..n-1`.
pub fn make_zmod(n: u64, limits: &Limits) -> Result<FiniteRing> {
    if n == 0 {
        return Err(RingError::Invalid("zmod needs n >= 1".into()));
    }
    limits.check_ring(n as usize)?;
    let labels = (0..n).map(|i| i.to_string()).collect();
    let m = n as usize;
    Ok(FiniteRing::from_fn(
        labels,
        0,
        1 % m,
        Construction::Zmod(n),
        Shape::Plain,
        |a, b| (a + b) % m,
        |a, b| (a * b) % m,
    ))
}

/// GF(p^k) as F_p[a]/(modulus). Elements are coefficient tuples encoded in
/// base p (constant term least significant) and labelled as polynomials in `a`.
/// Without an explicit modulus the first irreducible of degree k is used.
pub fn make_gf(p: u64, k: usize, modulus: Option<FpPoly>, limits: &Limits) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if k == 0 {
        return Err(RingError::Invalid("gf needs degree k >= 1".into()));
    }
    let order = (p as usize)
        .checked_pow(k as u32)
        .ok_or(RingError::CapExceeded {
            what: "ring",
            order: usize::MAX,
            cap: limits.max_ring_order,
        })?;
    limits.check_ring(order)?;
    let modulus = match modulus {
        Some(m) => {
            if m.characteristic() != p || m.degree() != Some(k) || !m.is_monic() {
                return Err(RingError::Invalid(format!(
                    "modulus {m} is not a monic polynomial of degree {k} over F_{p}"
                )));
            }
            if let Some(factor) = m.find_factor() {
                return Err(RingError::ReducibleModulus {
                    p,
                    modulus: m.to_string(),
                    factor: factor.to_string(),
                });
            }
            m
        }
        None => FpPoly::first_irreducible(p, k),
    };
    let decode = |mut idx: usize| -> FpPoly {
        let mut c = Vec::with_capacity(k);
        for _ in 0..k {
            c.push((idx % p as usize) as u64);
            idx /= p as usize;
        }
        FpPoly::new(p, c)
    };
    let encode = |f: &FpPoly| -> usize {
        (0..k)
            .rev()
            .fold(0usize, |acc, i| acc * p as usize + f.coeff(i) as usize)
    };
    let elems: Vec<FpPoly> = (0..order).map(decode).collect();
    let labels = elems.iter().map(|f| f.display_in("a")).collect();
    let construction = Construction::Gf {
        p,
        k,
        modulus: modulus.clone(),
    };
    Ok(FiniteRing::from_fn(
        labels,
        0,
        1 % order,
        construction,
        Shape::Plain,
        |a, b| encode(&elems[a].add(&elems[b])),
        |a, b| encode(&elems[a].mul(&elems[b]).rem(&modulus)),
    ))
}

/// Componentwise product ring with identity (1, 1).
pub fn product(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, limits: &Limits) -> Result<FiniteRing> {
    let (na, nb) = (a.order(), b.order());
    limits.check_ring(na * nb)?;
    let labels = (0..na * nb)
        .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
        .collect();
    let enc = |x: usize, y: usize| x * nb + y;
    Ok(FiniteRing::from_fn(
        labels,
        enc(a.zero(), b.zero()),
        enc(a.one(), b.one()),
        Construction::Prod(
            Box::new(a.construction().clone()),
            Box::new(b.construction().clone()),
        ),
        Shape::Product(Arc::clone(a), Arc::clone(b)),
        |x, y| enc(a.add(x / nb, y / nb), b.add(x % nb, y % nb)),
        |x, y| enc(a.mul(x / nb, y / nb), b.mul(x % nb, y % nb)),
    ))
}

/// A finite module over a [`FiniteRing`], given by its additive table and
/// the scalar action table (`ring.order() * order` entries).
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    labels: Vec<String>,
    add: Vec<u32>,
    act: Vec<u32>,
    zero: usize,
    description: String,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("description", &self.description)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteModule {
    /// Validated construction from explicit tables.
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        labels: Vec<String>,
        add: Vec<usize>,
        act: Vec<usize>,
        zero: usize,
        description: impl Into<String>,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 || add.len() != m * m || act.len() != ring.order() * m || zero >= m {
            return Err(RingError::Invalid("module table dimensions do not match".into()));
        }
        if add.iter().chain(act.iter()).any(|&x| x >= m) {
            return Err(RingError::Invalid("module table entry out of range".into()));
        }
        let module = Self {
            ring: Arc::clone(ring),
            labels,
            add: add.into_iter().map(|x| x as u32).collect(),
            act: act.into_iter().map(|x| x as u32).collect(),
            zero,
            description: description.into(),
        };
        module.check_axioms()?;
        Ok(module)
    }

    /// The ring as a module over itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> Self {
        let n = ring.order();
        let mut add = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(ring.add(a, b) as u32);
            }
        }
        let act = add
            .iter()
            .enumerate()
            .map(|(i, _)| ring.mul(i / n, i % n) as u32)
            .collect();
        Self {
            ring: Arc::clone(ring),
            labels: ring.labels().to_vec(),
            add,
            act,
            zero: ring.zero(),
            description: "self".into(),
        }
    }

    /// The cyclic module R/I for an ideal I of the whole ring.
    pub fn quotient(ideal: &crate::ideals::Ideal) -> Result<Self> {
        let q = crate::ideals::QuotientRing::new(ideal)?;
        let ring = Arc::clone(ideal.ring());
        if !ideal.carrier().is_full() {
            return Err(RingError::Invalid(
                "quotient modules need an ideal of the whole ring".into(),
            ));
        }
        let qr = q.ring();
        let m = qr.order();
        let mut add = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                add.push(qr.add(a, b) as u32);
            }
        }
        let mut act = Vec::with_capacity(ring.order() * m);
        for r in ring.elements() {
            let rbar = q.project(r).expect("carrier is the whole ring");
            for x in 0..m {
                act.push(qr.mul(rbar, x) as u32);
            }
        }
        let description = format!(
            "quot{{{}}}",
            ring.labels_of(ideal.members()).join(";")
        );
        Ok(Self {
            ring,
            labels: qr.labels().to_vec(),
            add,
            act,
            zero: qr.zero(),
            description,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b] as usize
    }

    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.act[r * self.order() + m] as usize
    }

    pub fn check_axioms(&self) -> Result<()> {
        let m = self.order();
        let ring = &self.ring;
        let fail = |axiom, witness: String| Err(RingError::ModuleAxiom { axiom, witness });
        for a in 0..m {
            if self.add(a, self.zero) != a {
                return fail("additive identity", self.labels[a].clone());
            }
            if !(0..m).any(|b| self.add(a, b) == self.zero) {
                return fail("additive inverse", self.labels[a].clone());
            }
            if self.act(ring.one(), a) != a {
                return fail("unital action", self.labels[a].clone());
            }
            for b in 0..m {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", format!("({}, {})", self.labels[a], self.labels[b]));
                }
                for c in 0..m {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", format!("({}, {}, {})", self.labels[a], self.labels[b], self.labels[c]));
                    }
                }
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                for x in 0..m {
                    let w = || format!("({}, {}, {})", ring.label(r), ring.label(s), self.labels[x]);
                    if self.act(ring.add(r, s), x) != self.add(self.act(r, x), self.act(s, x)) {
                        return fail("distributive over ring addition", w());
                    }
                    if self.act(ring.mul(r, s), x) != self.act(r, self.act(s, x)) {
                        return fail("associative action", w());
                    }
                }
            }
            for x in 0..m {
                for y in 0..m {
                    if self.act(r, self.add(x, y)) != self.add(self.act(r, x), self.act(r, y)) {
                        return fail(
                            "distributive over module addition",
                            format!("({}, {}, {})", ring.label(r), self.labels[x], self.labels[y]),
                        );
                    }
                }
            }
        }
        Ok(())
    }
}

/// R(+)M: pairs with componentwise addition and
/// `(r, m)(r', m') = (rr', rm' + r'm)`; identity `(1, 0)`.
pub fn idealization(
    ring: &Arc<FiniteRing>,
    module: &Arc<FiniteModule>,
    limits: &Limits,
) -> Result<FiniteRing> {
    if !Arc::ptr_eq(ring, module.ring()) {
        return Err(RingError::RingMismatch);
    }
    let (n, m) = (ring.order(), module.order());
    limits.check_ring(n * m)?;
    let labels = (0..n * m)
        .map(|i| format!("({},{})", ring.label(i / m), module.label(i % m)))
        .collect();
    let enc = |r: usize, x: usize| r * m + x;
    let construction = Construction::Idealization(
        Box::new(ring.construction().clone()),
        crate::expr::ModuleSpec::from_description(module.description()),
    );
    Ok(FiniteRing::from_fn(
        labels,
        enc(ring.zero(), module.zero()),
        enc(ring.one(), module.zero()),
        construction,
        Shape::Idealization(Arc::clone(ring), Arc::clone(module)),
        |a, b| enc(ring.add(a / m, b / m), module.add(a % m, b % m)),
        |a, b| {
            let (r, x) = (a / m, a % m);
            let (s, y) = (b / m, b % m);
            enc(ring.mul(r, s), module.add(module.act(r, y), module.act(s, x)))
        },
    ))
}

/// True iff the module has no proper nonzero submodule. Every nonzero
/// submodule contains a nonzero cyclic one, so it suffices that each nonzero
/// element generates the whole module.
pub fn is_simple_module(module: &FiniteModule) -> Result<bool> {
    if module.order() <= 1 {
        return Err(RingError::ZeroModule);
    }
    let ring = module.ring();
    Ok((0..module.order()).filter(|&x| x != module.zero()).all(|x| {
        let cyclic: ElemSet = ring.elements().map(|r| module.act(r, x)).collect();
        cyclic.len() == module.order()
    }))
}

/// A subring of an ambient [`FiniteRing`], stored as a member set.
#[derive(Clone)]
pub struct SubringHandle {
    ring: Arc<FiniteRing>,
    members: ElemSet,
}

impl fmt::Debug for SubringHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subring{:?}", self.ring.labels_of(&self.members))
    }
}

impl PartialEq for SubringHandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.members == other.members
    }
}

impl Eq for SubringHandle {}

impl SubringHandle {
    /// Validates that `members` contains 0 and 1 and is closed under
    /// addition, negation and multiplication.
    pub fn new(ring: &Arc<FiniteRing>, members: ElemSet) -> Result<Self> {
        if members.iter().any(|&x| x >= ring.order()) {
            return Err(RingError::NotSubring("index out of range".into()));
        }
        for needed in [ring.zero(), ring.one()] {
            if !members.contains(&needed) {
                return Err(RingError::NotSubring(format!(
                    "missing {}",
                    ring.label(needed)
                )));
            }
        }
        for &a in &members {
            if !members.contains(&ring.neg(a)) {
                return Err(RingError::NotSubring(format!(
                    "not closed under negation at {}",
                    ring.label(a)
                )));
            }
            for &b in &members {
                if !members.contains(&ring.add(a, b)) || !members.contains(&ring.mul(a, b)) {
                    return Err(RingError::NotSubring(format!(
                        "not closed at ({}, {})",
                        ring.label(a),
                        ring.label(b)
                    )));
                }
            }
        }
        Ok(Self {
            ring: Arc::clone(ring),
            members,
        })
    }

    pub(crate) fn new_unchecked(ring: &Arc<FiniteRing>, members: ElemSet) -> Self {
        Self {
            ring: Arc::clone(ring),
            members,
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
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

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ring.order()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ring.labels_of(&self.members)
    }

    pub fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.members.is_subset(&other.members)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::new_unchecked(
            &self.ring,
            self.members.intersection(&other.members).copied().collect(),
        ))
    }

    /// Copies the subring into a standalone ring. The returned vector maps
    /// standalone indices back to ambient indices.
    pub fn materialize(&self) -> (FiniteRing, Vec<usize>) {
        let embed: Vec<usize> = self.members.iter().copied().collect();
        let pos: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = embed.iter().map(|&x| self.ring.label(x).to_string()).collect();
        let ring = &self.ring;
        let r = FiniteRing::from_fn(
            labels,
            pos[&ring.zero()],
            pos[&ring.one()],
            Construction::Internal(format!("subring of {}", ring.construction())),
            Shape::Plain,
            |a, b| pos[&ring.add(embed[a], embed[b])],
            |a, b| pos[&ring.mul(embed[a], embed[b])],
        );
        (r, embed)
    }
}

/// Smallest subring containing `seed`: fixpoint of closing under
/// +, − and · starting from `seed ∪ {0, 1}`.
pub fn subring_closure(ring: &Arc<FiniteRing>, seed: impl IntoIterator<Item = usize>) -> SubringHandle {
    let members = closure_set(ring, seed);
    SubringHandle::new_unchecked(ring, members)
}

pub(crate) fn closure_set(ring: &FiniteRing, seed: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut seen = vec![false; ring.order()];
    let mut list = Vec::new();
    let push = |x: usize, seen: &mut Vec<bool>, list: &mut Vec<usize>| {
        if !seen[x] {
            seen[x] = true;
            list.push(x);
        }
    };
    push(ring.zero(), &mut seen, &mut list);
    push(ring.one(), &mut seen, &mut list);
    for s in seed {
        push(s, &mut seen, &mut list);
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        push(ring.neg(x), &mut seen, &mut list);
        for j in 0..=i {
            let y = list[j];
            push(ring.add(x, y), &mut seen, &mut list);
            push(ring.mul(x, y), &mut seen, &mut list);
        }
        i += 1;
    }
    list.into_iter().collect()
}

/// Small generating set found greedily in index order.
pub fn generating_set(ring: &FiniteRing) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = closure_set(ring, []);
    for x in ring.elements() {
        if !cur.contains(&x) {
            gens.push(x);
            cur = closure_set(ring, gens.iter().copied());
        }
    }
    gens
}

/// Exhaustive search for a ring isomorphism `a -> b`, returned as an index
/// map. Images of a greedy generating set are enumerated and the map is
/// propagated through the tables; a conflict prunes the branch.
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.characteristic() != b.characteristic() {
        return None;
    }
    let gens = generating_set(a);
    let mut map = vec![usize::MAX; a.order()];
    let mut assigned = Vec::new();
    if !extend_map(a, b, &mut map, &mut assigned, &[(a.zero(), b.zero()), (a.one(), b.one())]) {
        return None;
    }
    search_iso(a, b, &gens, 0, map, assigned)
}

fn search_iso(
    a: &FiniteRing,
    b: &FiniteRing,
    gens: &[usize],
    depth: usize,
    map: Vec<usize>,
    assigned: Vec<usize>,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        let mut hit = vec![false; b.order()];
        for &y in &map {
            if y == usize::MAX || hit[y] {
                return None;
            }
            hit[y] = true;
        }
        return Some(map);
    }
    let g = gens[depth];
    if map[g] != usize::MAX {
        return search_iso(a, b, gens, depth + 1, map, assigned);
    }
    let used: ElemSet = map.iter().copied().filter(|&y| y != usize::MAX).collect();
    for cand in b.elements().filter(|y| !used.contains(y)) {
        let mut m = map.clone();
        let mut asg = assigned.clone();
        if extend_map(a, b, &mut m, &mut asg, &[(g, cand)]) {
            if let Some(done) = search_iso(a, b, gens, depth + 1, m, asg) {
                return Some(done);
            }
        }
    }
    None
}

/// Adds the given pairs and closes the partial map under +, −, ·.
/// Returns false on an inconsistency or a collision of images.
fn extend_map(
    a: &FiniteRing,
    b: &FiniteRing,
    map: &mut [usize],
    assigned: &mut Vec<usize>,
    pairs: &[(usize, usize)],
) -> bool {
    let mut inverse: HashMap<usize, usize> = assigned.iter().map(|&x| (map[x], x)).collect();
    let mut queue: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((x, y)) = queue.pop() {
        if map[x] != usize::MAX {
            if map[x] != y {
                return false;
            }
            continue;
        }
        if let Some(&other) = inverse.get(&y) {
            if other != x {
                return false;
            }
        }
        map[x] = y;
        inverse.insert(y, x);
        assigned.push(x);
        queue.push((a.neg(x), b.neg(y)));
        for &z in assigned.iter() {
            let w = map[z];
            queue.push((a.add(x, z), b.add(y, w)));
            queue.push((a.mul(x, z), b.mul(y, w)));
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(r: FiniteRing) -> Arc<FiniteRing> {
        Arc::new(r)
    }

    #[test]
    fn zmod_examples() {
        let lim = Limits::default();
        let trivial = make_zmod(1, &lim).unwrap();
        assert_eq!(trivial.zero(), trivial.one());
        trivial.check_axioms().unwrap();
        make_zmod(4, &lim).unwrap().check_axioms().unwrap();
        let z6 = make_zmod(6, &lim).unwrap();
        let three = z6.index_of("3").unwrap();
        assert_eq!(z6.mul(three, three), three);
    }

    #[test]
    fn gf_examples() {
        let lim = Limits::default();
        let f2 = make_gf(2, 1, Some(FpPoly::x(2)), &lim).unwrap();
        assert_eq!(f2.order(), 2);
        assert!(f2.is_field());
        let f9 = make_gf(3, 2, Some(FpPoly::parse("x^2+1", 3, 'x').unwrap()), &lim).unwrap();
        assert_eq!(f9.order(), 9);
        f9.check_axioms().unwrap();
        for a in f9.elements().filter(|&a| a != f9.zero()) {
            assert!(f9.elements().any(|b| f9.mul(a, b) == f9.one()));
        }
        let err = make_gf(2, 2, Some(FpPoly::parse("x^2+x", 2, 'x').unwrap()), &lim).unwrap_err();
        assert!(matches!(err, RingError::ReducibleModulus { ref factor, .. } if factor == "x"));
    }

    #[test]
    fn product_examples() {
        let lim = Limits::default();
        let f2 = arc(make_gf(2, 1, None, &lim).unwrap());
        let p = product(&f2, &f2, &lim).unwrap();
        assert_eq!(p.order(), 4);
        let e1 = p.index_of("(1,0)").unwrap();
        let e2 = p.index_of("(0,1)").unwrap();
        assert_eq!(p.mul(e1, e2), p.index_of("(0,0)").unwrap());
        let f3 = arc(make_gf(3, 1, None, &lim).unwrap());
        product(&f3, &f3, &lim).unwrap().check_axioms().unwrap();
        let z2 = arc(make_zmod(2, &lim).unwrap());
        let z3 = arc(make_zmod(3, &lim).unwrap());
        let z2z3 = product(&z2, &z3, &lim).unwrap();
        let z6 = make_zmod(6, &lim).unwrap();
        let iso = find_isomorphism(&z2z3, &z6).expect("Z/2 x Z/3 is Z/6");
        for x in z2z3.elements() {
            for y in z2z3.elements() {
                assert_eq!(iso[z2z3.mul(x, y)], z6.mul(iso[x], iso[y]));
                assert_eq!(iso[z2z3.add(x, y)], z6.add(iso[x], iso[y]));
            }
        }
        assert!(find_isomorphism(&make_zmod(4, &lim).unwrap(), &p).is_none());
    }

    #[test]
    fn idealization_examples() {
        let lim = Limits::default();
        let f3 = arc(make_gf(3, 1, None, &lim).unwrap());
        let m = Arc::new(FiniteModule::regular(&f3));
        let t = idealization(&f3, &m, &lim).unwrap();
        t.check_axioms().unwrap();
        let e = t.index_of("(0,1)").unwrap();
        assert_eq!(t.mul(e, e), t.index_of("(0,0)").unwrap());

        let f9 = arc(make_gf(3, 2, None, &lim).unwrap());
        let m9 = Arc::new(FiniteModule::regular(&f9));
        let t81 = idealization(&f9, &m9, &lim).unwrap();
        assert_eq!(t81.order(), 81);
        t81.check_axioms().unwrap();
    }

    #[test]
    fn closure_examples() {
        let lim = Limits::default();
        let z12 = arc(make_zmod(12, &lim).unwrap());
        assert_eq!(subring_closure(&z12, []).len(), 12);
        let f4 = arc(make_gf(2, 2, None, &lim).unwrap());
        let g = f4.index_of("a").unwrap();
        assert!(subring_closure(&f4, [g]).is_full());
        let f3 = arc(make_gf(3, 1, None, &lim).unwrap());
        let t = arc(product(&f3, &f3, &lim).unwrap());
        let s = subring_closure(&t, [t.index_of("(1,0)").unwrap()]);
        assert_eq!(s.len(), 9);
        SubringHandle::new(&t, s.members().clone()).unwrap();
        let diag = subring_closure(&t, []);
        assert_eq!(diag.labels(), vec!["(0,0)", "(1,1)", "(2,2)"]);
    }

    #[test]
    fn simple_modules() {
        let lim = Limits::default();
        let f3 = arc(make_gf(3, 1, None, &lim).unwrap());
        assert!(is_simple_module(&FiniteModule::regular(&f3)).unwrap());
        let z4 = arc(make_zmod(4, &lim).unwrap());
        assert!(!is_simple_module(&FiniteModule::regular(&z4)).unwrap());
        let f9 = arc(make_gf(3, 2, None, &lim).unwrap());
        assert!(is_simple_module(&FiniteModule::regular(&f9)).unwrap());
        let z1 = arc(make_zmod(1, &lim).unwrap());
        assert_eq!(
            is_simple_module(&FiniteModule::regular(&z1)).unwrap_err(),
            RingError::ZeroModule
        );
    }

    #[test]
    fn bad_tables_rejected() {
        // Z/2 addition with a broken multiplication: 1*1 = 0.
        let err = FiniteRing::from_tables(
            vec!["0".into(), "1".into()],
            vec![0, 1, 1, 0],
            vec![0, 0, 0, 0],
            0,
            1,
            Construction::Internal("broken".into()),
        )
        .unwrap_err();
        assert!(matches!(err, RingError::RingAxiom { .. }));
    }
}
