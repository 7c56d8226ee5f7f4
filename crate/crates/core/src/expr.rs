//! Construction expressions: the textual provenance of every ring.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := zmod(n)
//!         | gf(p, k)            | gf(p, k, modulus)     modulus is a polynomial in x
//!         | prod(expr, expr)
//!         | quotient(expr, {label; label; ...})
//!         | idealization(expr, self)
//!         | idealization(expr, quot{label; ...})      module R/I
//!         | funcfield(p, center)  | funcfield(p, center, span)
//! ```
//!
//! `Display` always prints the canonical form (moduli filled in), so two
//! equal constructions print identically and build identical rings.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, RingError};
use crate::ideals::{ideal_generated, QuotientRing};
use crate::poly::{is_prime, FpPoly};
use crate::ring::{idealization, make_gf, make_zmod, product, FiniteModule, FiniteRing, Limits};

/// Default valuation span for function-field probe sets.
pub const DEFAULT_PROBE_SPAN: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    /// The ring as a module over itself.
    Regular,
    /// The cyclic module R/I, I generated by the listed labels.
    Quotient(Vec<String>),
}

impl ModuleSpec {
    pub(crate) fn from_description(desc: &str) -> Self {
        match desc.strip_prefix("quot{").and_then(|s| s.strip_suffix('}')) {
            Some(inner) => ModuleSpec::Quotient(split_top_level(inner, ';')),
            None => ModuleSpec::Regular,
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Regular => f.write_str("self"),
            ModuleSpec::Quotient(g) => write!(f, "quot{{{}}}", g.join(";")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Zmod(u64),
    Gf { p: u64, k: usize, modulus: FpPoly },
    Prod(Box<Construction>, Box<Construction>),
    Quotient(Box<Construction>, Vec<String>),
    Idealization(Box<Construction>, ModuleSpec),
    FuncField { p: u64, center: FpPoly, span: i64 },
    /// Rings produced internally (quotients of subrings, materialized
    /// subrings); printable but not parseable.
    Internal(String),
}

impl Construction {
    pub fn gf(p: u64, k: usize) -> Self {
        Construction::Gf {
            p,
            k,
            modulus: FpPoly::first_irreducible(p, k),
        }
    }

    pub fn prod(a: Construction, b: Construction) -> Self {
        Construction::Prod(Box::new(a), Box::new(b))
    }

    pub fn idealization(a: Construction, m: ModuleSpec) -> Self {
        Construction::Idealization(Box::new(a), m)
    }

    pub fn is_funcfield(&self) -> bool {
        matches!(self, Construction::FuncField { .. })
    }

    /// Builds the finite ring this expression denotes.
    pub fn build(&self, limits: &Limits) -> Result<Arc<FiniteRing>> {
        match self {
            Construction::Zmod(n) => Ok(Arc::new(make_zmod(*n, limits)?)),
            Construction::Gf { p, k, modulus } => {
                Ok(Arc::new(make_gf(*p, *k, Some(modulus.clone()), limits)?))
            }
            Construction::Prod(a, b) => {
                let a = a.build(limits)?;
                let b = b.build(limits)?;
                Ok(Arc::new(product(&a, &b, limits)?))
            }
            Construction::Quotient(a, gens) => {
                let a = a.build(limits)?;
                let gens = resolve_labels(&a, gens)?;
                let ideal = ideal_generated(&a.full(), gens)?;
                let q = QuotientRing::new(&ideal)?;
                let mut ring = q.into_ring();
                ring.set_construction(self.clone());
                Ok(Arc::new(ring))
            }
            Construction::Idealization(a, spec) => {
                let a = a.build(limits)?;
                let module = match spec {
                    ModuleSpec::Regular => FiniteModule::regular(&a),
                    ModuleSpec::Quotient(gens) => {
                        let gens = resolve_labels(&a, gens)?;
                        FiniteModule::quotient(&ideal_generated(&a.full(), gens)?)?
                    }
                };
                Ok(Arc::new(idealization(&a, &Arc::new(module), limits)?))
            }
            Construction::FuncField { .. } => Err(RingError::Incompatible(
                "funcfield expressions denote infinite rings and have no tables".into(),
            )),
            Construction::Internal(d) => Err(RingError::Parse(format!(
                "internal construction '{d}' cannot be rebuilt"
            ))),
        }
    }
}

pub(crate) fn resolve_labels(ring: &FiniteRing, labels: &[String]) -> Result<Vec<usize>> {
    labels.iter().map(|l| ring.index_of(l)).collect()
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Zmod(n) => write!(f, "zmod({n})"),
            Construction::Gf { p, k, modulus } => write!(f, "gf({p},{k},{modulus})"),
            Construction::Prod(a, b) => write!(f, "prod({a},{b})"),
            Construction::Quotient(a, g) => write!(f, "quotient({a},{{{}}})", g.join(";")),
            Construction::Idealization(a, m) => write!(f, "idealization({a},{m})"),
            Construction::FuncField { p, center, span } => {
                write!(f, "funcfield({p},{center},{span})")
            }
            Construction::Internal(d) => write!(f, "<{d}>"),
        }
    }
}

/// Splits at `sep` occurrences that are not nested inside (), [] or {}.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Splits `name(arg, arg, ...)` into its head and top-level arguments.
pub(crate) fn split_call(s: &str) -> Result<(String, Vec<String>)> {
    let s = s.trim();
    match s.find('(') {
        None => Ok((s.to_string(), vec![])),
        Some(open) => {
            if !s.ends_with(')') {
                return Err(RingError::Parse(format!("unbalanced parentheses in '{s}'")));
            }
            let head = s[..open].trim().to_string();
            let inner = &s[open + 1..s.len() - 1];
            Ok((head, split_top_level(inner, ',')))
        }
    }
}

fn parse_braced(s: &str) -> Result<Vec<String>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| RingError::Parse(format!("expected {{label; ...}}, got '{s}'")))?;
    Ok(split_top_level(inner, ';')
        .into_iter()
        .filter(|x| !x.is_empty())
        .collect())
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| RingError::Parse(format!("expected integer {what}, got '{s}'")))
}

fn expect_args(head: &str, args: &[String], allowed: &[usize]) -> Result<()> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        Err(RingError::Parse(format!(
            "{head} takes {allowed:?} arguments, got {}",
            args.len()
        )))
    }
}

impl FromStr for Construction {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self> {
        let (head, args) = split_call(s)?;
        match head.as_str() {
            "zmod" => {
                expect_args(&head, &args, &[1])?;
                Ok(Construction::Zmod(parse_u64(&args[0], "n")?))
            }
            "gf" => {
                expect_args(&head, &args, &[2, 3])?;
                let p = parse_u64(&args[0], "p")?;
                let k = parse_u64(&args[1], "k")? as usize;
                if !is_prime(p) {
                    return Err(RingError::NotPrime(p));
                }
                if k == 0 {
                    return Err(RingError::Invalid("gf needs degree k >= 1".into()));
                }
                let modulus = match args.get(2) {
                    Some(m) => FpPoly::parse(m, p, 'x')?,
                    None => FpPoly::first_irreducible(p, k),
                };
                Ok(Construction::Gf { p, k, modulus })
            }
            "prod" => {
                expect_args(&head, &args, &[2])?;
                Ok(Construction::prod(args[0].parse()?, args[1].parse()?))
            }
            "quotient" => {
                expect_args(&head, &args, &[2])?;
                Ok(Construction::Quotient(
                    Box::new(args[0].parse()?),
                    parse_braced(&args[1])?,
                ))
            }
            "idealization" => {
                expect_args(&head, &args, &[2])?;
                let base = args[0].parse()?;
                let m = args[1].trim();
                let spec = if m == "self" {
                    ModuleSpec::Regular
                } else if let Some(rest) = m.strip_prefix("quot") {
                    ModuleSpec::Quotient(parse_braced(rest)?)
                } else {
                    return Err(RingError::Parse(format!("unknown module spec '{m}'")));
                };
                Ok(Construction::idealization(base, spec))
            }
            "funcfield" => {
                expect_args(&head, &args, &[2, 3])?;
                let p = parse_u64(&args[0], "p")?;
                if !is_prime(p) {
                    return Err(RingError::NotPrime(p));
                }
                let center = FpPoly::parse(&args[1], p, 'x')?;
                let span = match args.get(2) {
                    Some(s) => s
                        .trim()
                        .parse()
                        .map_err(|_| RingError::Parse(format!("bad probe span '{s}'")))?,
                    None => DEFAULT_PROBE_SPAN,
                };
                Ok(Construction::FuncField { p, center, span })
            }
            other => Err(RingError::Parse(format!("unknown construction '{other}'"))),
        }
    }
}

impl Serialize for Construction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Construction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
