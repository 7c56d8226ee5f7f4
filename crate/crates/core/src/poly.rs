//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are stored low degree first and always trimmed, so the zero
//! polynomial has an empty coefficient vector and equality is structural.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Result, RingError};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    /// Coefficients given as signed integers, reduced into 0..p.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        Self::new(p, coeffs.iter().map(|c| c.rem_euclid(pi) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn monomial(p: u64, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&a| a * (c % self.p) % self.p).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = divisor.degree().unwrap();
        let inv_lead = mod_inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv_lead % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = (rem[k] + p - c * b % p) % p;
            }
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Returns `(lead, monic)` with `self = lead * monic`. Zero maps to `(0, 0)`.
    pub fn monic_part(&self) -> (u64, Self) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let lead = self.leading();
        (lead, self.scale(mod_inv(lead, self.p)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic_part().1
    }

    /// Substitutes `x -> a*x + b`.
    pub fn compose_affine(&self, a: u64, b: u64) -> Self {
        let lin = Self::new(self.p, vec![b, a]);
        let mut acc = Self::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(self.p, c));
        }
        acc
    }

    /// Multiplicity of `f` as a factor of `self`; `None` for the zero polynomial.
    pub fn order_at(&self, f: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(f);
            if !r.is_zero() {
                return Some(n);
            }
            cur = q;
            n += 1;
        }
    }

    /// All monic polynomials of exactly degree `deg`, in increasing index order.
    pub fn monics_of_degree(p: u64, deg: usize) -> impl Iterator<Item = FpPoly> {
        let count = p.pow(deg as u32);
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(idx % p);
                idx /= p;
            }
            coeffs.push(1);
            FpPoly::new(p, coeffs)
        })
    }

    /// Trial division by every monic polynomial of degree at most `deg/2`.
    /// Returns a nontrivial factor when one exists.
    pub fn find_factor(&self) -> Option<FpPoly> {
        let deg = self.degree()?;
        for d in 1..=deg / 2 {
            for cand in Self::monics_of_degree(self.p, d) {
                if cand.divides(self) {
                    return Some(cand);
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.degree(), Some(d) if d >= 1) && self.find_factor().is_none()
    }

    /// Smallest monic irreducible polynomial of the given degree, ordering by
    /// the base-p integer formed from the lower coefficients.
    pub fn first_irreducible(p: u64, deg: usize) -> FpPoly {
        Self::monics_of_degree(p, deg)
            .find(|f| f.is_irreducible())
            .expect("irreducible polynomials exist in every degree")
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, c) => format!("{c}{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join("+")
    }

    /// Parses sums of terms such as `x^4+2x+1` or `3*x^2 - x`.
    pub fn parse(s: &str, p: u64, var: char) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(RingError::Parse("empty polynomial".into()));
        }
        let mut acc = Self::zero(p);
        let mut sign = 1i64;
        let mut term = String::new();
        let flush = |term: &str, sign: i64, acc: &mut FpPoly| -> Result<()> {
            if term.is_empty() {
                return Err(RingError::Parse(format!("dangling sign in '{s}'")));
            }
            let t = parse_term(term, p, var)?;
            *acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            Ok(())
        };
        for (i, ch) in src.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !term.ends_with('^') {
                flush(&term, sign, &mut acc)?;
                term.clear();
                sign = if ch == '-' { -1 } else { 1 };
            } else if ch == '-' && i == 0 {
                sign = -1;
            } else if ch == '+' && i == 0 {
            } else {
                term.push(ch);
            }
        }
        flush(&term, sign, &mut acc)?;
        Ok(acc)
    }
}

fn parse_term(term: &str, p: u64, var: char) -> Result<FpPoly> {
    let bad = || RingError::Parse(format!("bad polynomial term '{term}'"));
    match term.find(var) {
        None => {
            let c: u64 = term.parse().map_err(|_| bad())?;
            Ok(FpPoly::constant(p, c % p))
        }
        Some(pos) => {
            let coeff_str = term[..pos].trim_end_matches('*');
            let c: u64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str.parse().map_err(|_| bad())?
            };
            let rest = &term[pos + var.len_utf8()..];
            let e: usize = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            Ok(FpPoly::monomial(p, c % p, e))
        }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl serde::Serialize for FpPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[F_{}]({})", self.p, self.display_in("x"))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f = FpPoly::parse("x^4 + 2x + 1", 5, 'x').unwrap();
        assert_eq!(f.coeffs(), &[1, 2, 0, 0, 1]);
        assert_eq!(f.to_string(), "x^4+2x+1");
        let g = FpPoly::parse("-x", 3, 'x').unwrap();
        assert_eq!(g.coeffs(), &[0, 2]);
    }

    #[test]
    fn division_identity() {
        let a = FpPoly::new(7, vec![3, 1, 4, 1, 5]);
        let b = FpPoly::new(7, vec![2, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn irreducibility() {
        assert!(FpPoly::parse("x^2+1", 3, 'x').unwrap().is_irreducible());
        let red = FpPoly::parse("x^2+x", 2, 'x').unwrap();
        assert_eq!(red.find_factor(), Some(FpPoly::x(2)));
        assert_eq!(FpPoly::first_irreducible(2, 4).to_string(), "x^4+x+1");
    }

    #[test]
    fn affine_substitution() {
        // (2x)^4 = 16x^4 = x^4 over F_5
        let f = FpPoly::monomial(5, 1, 4);
        assert_eq!(f.compose_affine(2, 0), f);
        let g = FpPoly::x(5).compose_affine(1, 1);
        assert_eq!(g.coeffs(), &[1, 1]);
    }
}
