//! Run configurations for the stochastic commands. Each can be read from a
//! TOML file or assembled from flags; the resolved form, with the rule
//! inlined and the seed fixed, is what the manifest stores.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{IoContext, LabError, Result};
use crate::rulefile::RuleFile;

/// Inlines `rule_file` into `rule`; exactly one of the two must be given.
/// Relative paths resolve against `base`.
pub fn resolve_rule(rule: &mut Option<RuleFile>, rule_file: &mut Option<String>, base: &Path, origin: &str) -> Result<RuleFile> {
    let resolved = match (rule.take(), rule_file.take()) {
        (Some(r), None) => r,
        (None, Some(p)) => RuleFile::load(&base.join(p))?,
        (Some(_), Some(_)) => return Err(LabError::config(origin, "rule", "give either rule or rule_file, not both")),
        (None, None) => return Err(LabError::config(origin, "rule", "missing rule or rule_file")),
    };
    *rule = Some(resolved.clone());
    Ok(resolved)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_file: Option<String>,
    pub p: f64,
    pub horizon: u64,
    /// Half-width of the initial block; default is a filling box of radius 2R+2.
    #[serde(default)]
    pub initial_radius: Option<i64>,
    #[serde(default = "one")]
    pub replicas: u64,
    /// Measurement and snapshot spacing.
    #[serde(default)]
    pub snapshot_every: Option<u64>,
    #[serde(default)]
    pub master_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripFileConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_file: Option<String>,
    pub p: f64,
    pub directions: Vec<[i64; 2]>,
    pub width: u32,
    pub horizon: u64,
    #[serde(default)]
    pub burn_in: Option<u64>,
    #[serde(default = "sixteen")]
    pub blocks: usize,
    #[serde(default)]
    pub replica: u64,
    #[serde(default)]
    pub master_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KpolyConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_file: Option<String>,
    pub p: f64,
    /// All primitive directions with both coordinates at most this in size.
    pub max_coord: i64,
    pub width: u32,
    pub horizon: u64,
    #[serde(default)]
    pub burn_in: Option<u64>,
    #[serde(default = "sixteen")]
    pub blocks: usize,
    #[serde(default)]
    pub master_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolvableConfig {
    pub p: f64,
    pub horizon: u64,
    #[serde(default = "twenty")]
    pub runs: u64,
    #[serde(default = "default_alphas")]
    pub alphas: Vec<f64>,
    #[serde(default)]
    pub master_seed: Option<u64>,
}

fn one() -> u64 {
    1
}

fn sixteen() -> usize {
    16
}

fn twenty() -> u64 {
    20
}

fn default_alphas() -> Vec<f64> {
    (1..10).map(|i| i as f64 / 10.0).collect()
}

pub fn load_toml<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).at(path)?;
    let file = path.display().to_string();
    let de = toml::Deserializer::parse(&text).map_err(|e| LabError::config(&file, "(document)", e.to_string()))?;
    serde_path_to_error::deserialize(de).map_err(|e| LabError::config(&file, e.path().to_string(), e.into_inner().to_string()))
}

pub fn from_json<T: DeserializeOwned>(value: &serde_json::Value, origin: &str) -> Result<T> {
    serde_path_to_error::deserialize(value)
        .map_err(|e| LabError::config(origin, format!("config.{}", e.path()), e.into_inner().to_string()))
}

/// The given seed, or a fresh one announced on stderr.
pub fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let nanos = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
        let s = (nanos as u64) ^ ((std::process::id() as u64) << 32);
        eprintln!("master seed: {s}");
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_field_reports_its_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.toml");
        std::fs::write(&path, "p = 0.9\nhorizon = 10\n[rule]\nneighborhood = \"moore\"\nkind = \"threshold\"\ntheta = 3\ntheat = 2\n").unwrap();
        let err = load_toml::<GrowConfig>(&path).unwrap_err();
        assert!(err.to_string().contains(": rule.theat: "), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn wrong_type_reports_its_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.toml");
        std::fs::write(&path, "p = 0.5\nhorizon = \"long\"\n").unwrap();
        let err = load_toml::<SolvableConfig>(&path).unwrap_err();
        assert!(err.to_string().contains("horizon"), "{err}");
    }

    #[test]
    fn rule_by_path() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("r.toml"), RuleFile::threshold("moore", 3).to_toml()).unwrap();
        std::fs::write(dir.path().join("g.toml"), "rule_file = \"r.toml\"\np = 0.9\nhorizon = 10\n").unwrap();
        let mut cfg: GrowConfig = load_toml(&dir.path().join("g.toml")).unwrap();
        let r = resolve_rule(&mut cfg.rule, &mut cfg.rule_file, dir.path(), "g.toml").unwrap();
        assert_eq!(r, RuleFile::threshold("moore", 3));
        assert!(cfg.rule_file.is_none() && cfg.rule.is_some());
    }
}
