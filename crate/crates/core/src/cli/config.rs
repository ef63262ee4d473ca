//! JSON engine configuration.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cartan::{validate_datum, BorcherdsCartanDatum};
use crate::error::{Error, Result};
use crate::presentation::{GenType, Presentation, TypeTable};

/// Environment variable overriding the reduction step ceiling.
pub const BUDGET_ENV: &str = "WQA_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Truncation {
    pub max_word_length: usize,
    pub module_height: usize,
    pub weyl_length: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { max_word_length: 12, module_height: 6, weyl_length: 6 }
    }
}

/// A user-supplied substitution, checked by the `morphisms` suite.
/// Images are expressions; generators left out map to themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismConfig {
    pub name: String,
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub inverse: Option<BTreeMap<String, String>>,
    #[serde(default = "yes")]
    pub expected: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    matrix: Vec<Vec<i64>>,
    symmetrizers: Option<Vec<i64>>,
    #[serde(rename = "tau_E")]
    tau_e: Option<Vec<GenType>>,
    #[serde(rename = "tau_F")]
    tau_f: Option<Vec<GenType>>,
    m: i64,
    #[serde(default)]
    truncation: Truncation,
    #[serde(default)]
    suites: Vec<String>,
    #[serde(default)]
    weights: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    morphisms: Vec<MorphismConfig>,
    #[serde(default = "default_samples")]
    samples: usize,
    #[serde(default)]
    seed: u64,
}

fn default_samples() -> usize {
    100
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub datum: BorcherdsCartanDatum,
    pub tau: TypeTable,
    pub m: i64,
    pub truncation: Truncation,
    pub suites: Vec<String>,
    /// Dominant weights `λ(h_i)` for the module and character suites.
    pub weights: Vec<Vec<i64>>,
    pub morphisms: Vec<MorphismConfig>,
    /// Random words per case in the weak-antipode suite.
    pub samples: usize,
    pub seed: u64,
}

impl EngineConfig {
    /// Builds the presentation, applying truncation and `WQA_BUDGET`.
    pub fn presentation(&self) -> Result<Presentation> {
        let mut p = Presentation::build(&self.datum, &self.tau, self.m)?;
        p.set_max_degree(self.truncation.max_word_length);
        if let Some(b) = budget_from_env()? {
            p.set_budget(b);
        }
        Ok(p)
    }
}

/// Reads `WQA_BUDGET`, if set.
pub fn budget_from_env() -> Result<Option<u64>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v} is not a step count"))),
        Err(_) => Ok(None),
    }
}

/// Zero weight, each fundamental weight, and the all-ones weight.
fn default_weights(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; n]];
    for i in 0..n {
        let mut w = vec![0; n];
        w[i] = 1;
        out.push(w);
    }
    if n > 1 {
        out.push(vec![1; n]);
    }
    out
}

pub fn parse_config(text: &str) -> Result<EngineConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = raw.matrix.len();
    let s = raw.symmetrizers.unwrap_or_else(|| vec![1; n]);
    let datum = validate_datum(&raw.matrix, &s)?;
    let types = |v: Option<Vec<GenType>>, which: &str| -> Result<Vec<GenType>> {
        let v = v.unwrap_or_else(|| vec![GenType::One; n]);
        if v.len() != n {
            return Err(Error::Parse(format!("tau_{which} has {} entries, expected {n}", v.len())));
        }
        Ok(v)
    };
    let tau = TypeTable { e: types(raw.tau_e, "E")?, f: types(raw.tau_f, "F")? };
    if raw.m < 2 {
        return Err(Error::UnsupportedM(raw.m));
    }
    let t = raw.truncation;
    if t.max_word_length == 0 || t.module_height == 0 || t.weyl_length == 0 {
        return Err(Error::Parse("truncation bounds must be positive".into()));
    }
    for s in &raw.suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(Error::Parse(format!("unknown suite `{s}`")));
        }
    }
    let weights = raw.weights.unwrap_or_else(|| default_weights(n));
    if let Some(w) = weights.iter().find(|w| w.len() != n || w.iter().any(|&x| x < 0)) {
        return Err(Error::Parse(format!("weight {w:?} is not a dominant weight of rank {n}")));
    }
    Ok(EngineConfig {
        datum,
        tau,
        m: raw.m,
        truncation: t,
        suites: raw.suites,
        weights,
        morphisms: raw.morphisms,
        samples: raw.samples,
        seed: raw.seed,
    })
}

pub fn load_config(path: impl AsRef<Path>) -> Result<EngineConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Suite names accepted by `run_suite`, in run order for `all`.
pub const SUITES: [&str; 10] =
    ["datum", "bialgebra", "weak-antipode", "gate", "subalgebras", "grouplikes", "morphisms", "modules", "characters", "all"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::DatumViolation;

    #[test]
    fn defaults() {
        let c = parse_config(r#"{"matrix":[[2]],"m":2}"#).unwrap();
        assert_eq!(c.datum.symmetrizers(), &[1]);
        assert_eq!(c.tau, TypeTable::all_one(1));
        assert_eq!(c.truncation, Truncation { max_word_length: 12, module_height: 6, weyl_length: 6 });
        assert_eq!(c.weights, vec![vec![0], vec![1]]);
    }

    #[test]
    fn type_zero() {
        let c = parse_config(r#"{"matrix":[[0]],"tau_E":["zero"],"m":4}"#).unwrap();
        assert_eq!(c.tau.e, vec![GenType::Zero]);
        assert_eq!(c.tau.f, vec![GenType::One]);
        assert_eq!(c.m, 4);
    }

    #[test]
    fn rejects() {
        let e = parse_config(r#"{"matrix":[[2,-1],[0,2]],"m":3}"#).unwrap_err();
        assert_eq!(e, Error::Validation(vec![DatumViolation::ZeroPairViolation(1, 0)]));
        assert!(matches!(parse_config(r#"{"matrix":[[2]],"m":1}"#), Err(Error::UnsupportedM(1))));
        assert!(matches!(parse_config(r#"{"matrix":[[2]]"#), Err(Error::Parse(_))));
        assert!(matches!(parse_config(r#"{"matrix":[[2]],"m":2,"suites":["nope"]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_config(r#"{"matrix":[[2]],"m":2,"tau_F":["one","zero"]}"#), Err(Error::Parse(_))));
        assert!(matches!(load_config("/nonexistent/wqa.json"), Err(Error::Io(_))));
    }
}
