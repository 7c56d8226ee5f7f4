use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::check::Check;
use crate::error::RingError;

pub const SCHEMA: &str = "ringlab/1";

macro_rules! theorems {
    ($($variant:ident => $name:literal, $setting:ident;)*) => {
        /// One checker per verified result.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId { $($variant,)* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self { $(TheoremId::$variant => $name,)* }
            }

            pub fn setting(self) -> SettingKind {
                match self { $(TheoremId::$variant => SettingKind::$setting,)* }
            }
        }
    };
}

theorems! {
    Lemma21 => "lemma_2_1", Finite;
    Lemma22a => "lemma_2_2a", Finite;
    Lemma22b => "lemma_2_2b", Finite;
    Lemma22c => "lemma_2_2c", Finite;
    Prop23 => "prop_2_3", Finite;
    Lemma24 => "lemma_2_4", Finite;
    Thm25Consistency => "thm_2_5_consistency", Finite;
    Thm26 => "thm_2_6", Finite;
    Example28 => "example_2_8", Finite;
    Lemma31 => "lemma_3_1", Both;
    Lemma32 => "lemma_3_2", Both;
    Lemma34Witness => "lemma_3_4_witness", FuncField;
    Prop35 => "prop_3_5", FuncField;
    Thm36 => "thm_3_6", FuncField;
    Prop41 => "prop_4_1", Finite;
    Prop42 => "prop_4_2", Both;
    Prop43 => "prop_4_3", Finite;
    Cor44 => "cor_4_4", Both;
    Lemma46 => "lemma_4_6", Both;
    Thm47 => "thm_4_7", Both;
    Prop49 => "prop_4_9", Finite;
    Cor410 => "cor_4_10", Both;
}

/// Which instances a checker accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SettingKind {
    Finite,
    FuncField,
    Both,
}

impl SettingKind {
    pub fn accepts(self, funcfield: bool) -> bool {
        match self {
            SettingKind::Finite => !funcfield,
            SettingKind::FuncField => funcfield,
            SettingKind::Both => true,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s.trim())
            .ok_or_else(|| RingError::Parse(format!("unknown theorem id '{s}'")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "HYPOTHESIS-VIOLATION")]
    HypothesisViolation,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::HypothesisViolation => "HYPOTHESIS-VIOLATION",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    /// Every element of the finite rings involved was examined.
    Exhaustive,
    /// Certified on seeded probe sets only.
    Probes,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub instance: String,
    pub status: Status,
    pub confidence: Confidence,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing: Option<Check>,
    pub witnesses: BTreeMap<String, serde_json::Value>,
    /// Wall-clock time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(seed: u64, verdicts: Vec<Verdict>) -> Self {
        Self {
            schema: SCHEMA,
            seed,
            verdicts,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table, one row per verdict, followed by status counts.
    pub fn summary_table(&self) -> String {
        let w_thm = self.verdicts.iter().map(|v| v.theorem.as_str().len()).max().unwrap_or(7).max(7);
        let w_inst = self.verdicts.iter().map(|v| v.instance.len()).max().unwrap_or(8).max(8);
        let mut out = format!(
            "{:<w_thm$}  {:<w_inst$}  {:<20}  {:<10}  {:>9}  note\n",
            "theorem", "instance", "status", "confidence", "ms"
        );
        for v in &self.verdicts {
            let conf = match v.confidence {
                Confidence::Exhaustive => "exhaustive",
                Confidence::Probes => "probes",
            };
            let note = v.first_failing.as_ref().map(|c| c.name.as_str()).unwrap_or("");
            out.push_str(&format!(
                "{:<w_thm$}  {:<w_inst$}  {:<20}  {:<10}  {:>9.1}  {}\n",
                v.theorem.as_str(),
                v.instance,
                v.status.to_string(),
                conf,
                v.runtime.as_secs_f64() * 1e3,
                note
            ));
        }
        let count = |s: Status| self.verdicts.iter().filter(|v| v.status == s).count();
        out.push_str(&format!(
            "\n{} verdicts: {} PASS, {} FAIL, {} HYPOTHESIS-VIOLATION, {} INCONCLUSIVE\n",
            self.verdicts.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::HypothesisViolation),
            count(Status::Inconclusive)
        ));
        out
    }
}
