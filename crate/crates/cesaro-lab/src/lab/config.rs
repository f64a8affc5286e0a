//! Scenario configuration documents: JSON with a strict schema (unknown
//! fields rejected), mirroring the theorem catalogue.

use crate::measure::RadialMeasure;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The boundedness statements the harness can replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremId {
    T1_1,
    T1_2,
    T1_3,
    T1_4,
    T1_5,
    C3_3,
    C3_5,
    C3_6,
    C3_8,
    C3_9,
    C3_10,
    R3_4,
    R3_7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Necessity,
    Sufficiency,
    #[default]
    Both,
}

/// What the configured measure should make the statistics do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Bounded,
    Growing,
}

/// An exponent that may be infinite; serialized as a number or "inf".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Exponent(v)),
            Raw::Text(t) if t == "inf" || t == "infinity" => Ok(Exponent(f64::INFINITY)),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {t:?}"
            ))),
        }
    }
}

/// Space parameters; which ones matter depends on the theorem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SpaceParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Statement part for theorems with several (T1_2: 1 or 2).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridParams {
    /// Depth of the a-grid used by necessity witnesses.
    pub a_depth: usize,
    /// Depth of the radial grid used by norm estimators.
    pub r_depth: usize,
    /// Depth of the w-grid used by the Morrey estimator.
    pub w_depth: usize,
    /// Highest cached moment order.
    pub moment_order: usize,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            a_depth: 14,
            r_depth: 30,
            w_depth: 15,
            moment_order: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub slope_threshold: f64,
    pub vanish_fraction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            slope_threshold: crate::trend::SLOPE_THRESHOLD,
            vanish_fraction: crate::trend::VANISH_FRACTION,
        }
    }
}

fn default_truncation() -> usize {
    1024
}

/// One experiment: a theorem, a direction, a measure, and what the measure
/// is expected to do to the statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub theorem: TheoremId,
    #[serde(default)]
    pub direction: Direction,
    pub expected: Expected,
    #[serde(default)]
    pub params: SpaceParams,
    pub measure: RadialMeasure,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default)]
    pub grid: GridParams,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl ScenarioConfig {
    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("{:?}", self.theorem))
    }
}
