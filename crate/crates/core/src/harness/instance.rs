use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::{builtin, close_group, fixed_subring, is_invariant_subring, ActionGroup, Automorphism};
use crate::error::{Result, RingError};
use crate::expr::{resolve_labels, Construction};
use crate::extend::ExtensionKind;
use crate::funcfield::{DVRWitness, SubstAction};
use crate::harness::verdict::TheoremId;
use crate::ring::{subring_closure, ElemSet, FiniteRing, Limits, Shape, SubringHandle};

/// How the inner ring `R` is picked out of `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SubringSpec {
    /// `R(+)0` for idealizations, the prime subring otherwise.
    #[default]
    Base,
    /// `{(a, a)}` in a product of two equal factors.
    Diag,
    Full,
    /// Subring generated by the listed labels.
    Gens(Vec<String>),
    /// Elements fixed by every listed automorphism.
    Fixed(Vec<String>),
}

impl SubringSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "base" => Ok(SubringSpec::Base),
            "diag" => Ok(SubringSpec::Diag),
            "full" => Ok(SubringSpec::Full),
            other => Err(RingError::Parse(format!(
                "subring spec '{other}' (expected base, diag or full)"
            ))),
        }
    }

    pub fn resolve(&self, ring: &Arc<FiniteRing>, limits: &Limits) -> Result<SubringHandle> {
        match self {
            SubringSpec::Full => Ok(ring.full()),
            SubringSpec::Base => match ring.shape() {
                Shape::Idealization(_, m) => {
                    let (k, z) = (m.order(), m.zero());
                    let members: ElemSet = ring.elements().filter(|x| x % k == z).collect();
                    SubringHandle::new(ring, members)
                }
                _ => Ok(subring_closure(ring, [ring.one()])),
            },
            SubringSpec::Diag => match ring.shape() {
                Shape::Product(a, b) if a.construction() == b.construction() => {
                    let n = b.order();
                    SubringHandle::new(ring, (0..n).map(|x| x * n + x).collect())
                }
                _ => Err(RingError::Invalid(
                    "diag needs a product of two equal factors".into(),
                )),
            },
            SubringSpec::Gens(labels) => Ok(subring_closure(ring, resolve_labels(ring, labels)?)),
            SubringSpec::Fixed(specs) => {
                let autos = specs
                    .iter()
                    .map(|s| builtin(ring, s))
                    .collect::<Result<Vec<_>>>()?;
                let group = close_group(ring, autos, limits)?;
                fixed_subring(&ring.full(), &group)
            }
        }
    }
}

/// A built-in automorphism name or an explicit label map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Map { map: BTreeMap<String, String> },
}

impl ActionSpec {
    pub fn automorphism(&self, ring: &Arc<FiniteRing>) -> Result<Automorphism> {
        match self {
            ActionSpec::Named(s) => builtin(ring, s),
            ActionSpec::Map { map } => Automorphism::from_label_map(ring, map),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default)]
    pub id: String,
    pub ring: Construction,
    #[serde(default)]
    pub subring: SubringSpec,
    #[serde(default)]
    pub action: Vec<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExtensionKind>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

pub const NEGATIVE_TAG: &str = "negative";
pub const COLLAPSE_TAG: &str = "collapse";

impl Instance {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    pub fn is_funcfield(&self) -> bool {
        self.ring.is_funcfield()
    }

    /// Builds rings, subrings and the group, enforcing that `R` is
    /// invariant unless the instance is tagged negative.
    pub fn materialize(&self, limits: &Limits) -> Result<Setting> {
        let setting = match &self.ring {
            Construction::FuncField { p, center, span } => {
                if self.subring != SubringSpec::Base {
                    return Err(RingError::Invalid(
                        "funcfield instances use the valuation ring as R".into(),
                    ));
                }
                let dvr = DVRWitness::new(center.clone())?;
                let gens = self
                    .action
                    .iter()
                    .map(|a| match a {
                        ActionSpec::Named(s) => SubstAction::parse_spec(s, *p),
                        ActionSpec::Map { .. } => Err(RingError::Invalid(
                            "label maps do not apply to funcfield instances".into(),
                        )),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let group = SubstAction::new(*p, gens)?;
                Setting::Func(FuncSetting { dvr, group, span: *span })
            }
            c => {
                let ring = c.build(limits)?;
                let inner = self.subring.resolve(&ring, limits)?;
                let autos = self
                    .action
                    .iter()
                    .map(|a| a.automorphism(&ring))
                    .collect::<Result<Vec<_>>>()?;
                let group = close_group(&ring, autos, limits)?;
                let outer = ring.full();
                let fixed_outer = fixed_subring(&outer, &group)?;
                let fixed_inner = if is_invariant_subring(&inner, &group) {
                    Some(fixed_subring(&inner, &group)?)
                } else {
                    None
                };
                Setting::Finite(FiniteSetting {
                    ring,
                    inner,
                    outer,
                    group,
                    fixed_inner,
                    fixed_outer,
                })
            }
        };
        if !setting.invariant() && !self.has_tag(NEGATIVE_TAG) {
            return Err(RingError::NotInvariant(format!(
                "instance '{}' is not tagged {NEGATIVE_TAG}",
                self.id
            )));
        }
        Ok(setting)
    }
}

/// The instance format read by the command line: an instance plus the
/// checks to run and the seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceFile {
    #[serde(flatten)]
    pub instance: Instance,
    pub checks: Vec<TheoremId>,
    pub seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    id: String,
    ring: Construction,
    #[serde(default)]
    subring: SubringSpec,
    #[serde(default)]
    action: Vec<ActionSpec>,
    #[serde(default)]
    expected: Option<ExtensionKind>,
    #[serde(default)]
    tags: Vec<String>,
    #[serde(default)]
    checks: Vec<TheoremId>,
    #[serde(default)]
    seed: u64,
}

impl InstanceFile {
    /// Parses without buffering so errors carry the offending line and column.
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        let raw: RawFile = serde_json::from_str(text)?;
        Ok(InstanceFile {
            instance: Instance {
                id: if raw.id.is_empty() { "file".into() } else { raw.id },
                ring: raw.ring,
                subring: raw.subring,
                action: raw.action,
                expected: raw.expected,
                tags: raw.tags,
            },
            checks: raw.checks,
            seed: raw.seed,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FiniteSetting {
    pub ring: Arc<FiniteRing>,
    pub inner: SubringHandle,
    pub outer: SubringHandle,
    pub group: ActionGroup,
    /// `R^G`, present when `R` is invariant.
    pub fixed_inner: Option<SubringHandle>,
    pub fixed_outer: SubringHandle,
}

#[derive(Debug, Clone)]
pub struct FuncSetting {
    pub dvr: DVRWitness,
    pub group: SubstAction,
    pub span: i64,
}

#[derive(Debug, Clone)]
pub enum Setting {
    Finite(FiniteSetting),
    Func(FuncSetting),
}

impl Setting {
    pub fn invariant(&self) -> bool {
        match self {
            Setting::Finite(s) => s.fixed_inner.is_some(),
            Setting::Func(s) => crate::funcfield::invariance_check(&s.dvr, &s.group),
        }
    }
}
