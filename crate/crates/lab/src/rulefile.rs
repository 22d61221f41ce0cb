//! Rule files: TOML documents describing a neighborhood and a monotone rule.
//!
//! ```toml
//! neighborhood = "moore"          # or "von-neumann", "box:2", "diamond:3",
//!                                 # or a list of [dx, dy] offsets
//! kind = "threshold"              # threshold | antichain | probtable
//! theta = 3
//! ```
//!
//! Antichains list `minimal_sets = [[[0, 1], [1, 1]], ...]`. Probability
//! tables list `prob_entries = [{ set = [[1, 0]], p = 0.5 }, ...]`; unlisted
//! subsets get 0 unless `upward_closed = true`, in which case every subset
//! takes the largest probability of a listed entry it contains, and subsets
//! holding the origin get 1.

use std::path::Path;

use polygrowth::ca::{validate_rule, Neighborhood, Pattern};
use polygrowth::{MonotoneRule, RuleKind, Site};
use serde::{Deserialize, Serialize};

use crate::error::{IoContext, LabError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub neighborhood: NeighborhoodSpec,
    pub kind: KindName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_sets: Option<Vec<Vec<[i64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob_entries: Option<Vec<ProbEntry>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub upward_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NeighborhoodSpec {
    Named(String),
    Offsets(Vec<[i64; 2]>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindName {
    Threshold,
    Antichain,
    Probtable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbEntry {
    pub set: Vec<[i64; 2]>,
    pub p: f64,
}

fn sites(list: &[[i64; 2]]) -> Vec<Site> {
    list.iter().map(|&[x, y]| Site::new(x, y)).collect()
}

impl NeighborhoodSpec {
    pub fn build(&self, file: &str) -> Result<Neighborhood> {
        match self {
            NeighborhoodSpec::Offsets(list) => Ok(Neighborhood::new(sites(list))?),
            NeighborhoodSpec::Named(name) => {
                let bad = || LabError::config(file, "neighborhood", format!("unknown neighborhood {name:?}"));
                let (base, range) = match name.split_once(':') {
                    Some((b, r)) => (b, Some(r.trim().parse::<i64>().map_err(|_| bad())?)),
                    None => (name.as_str(), None),
                };
                match (base.trim(), range) {
                    ("moore", None) => Ok(Neighborhood::moore()),
                    ("von-neumann" | "von_neumann", None) => Ok(Neighborhood::von_neumann()),
                    ("box", Some(r)) if r >= 1 => Ok(Neighborhood::box_range(r)),
                    ("diamond", Some(r)) if r >= 1 => Ok(Neighborhood::diamond(r)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl RuleFile {
    pub fn threshold(neighborhood: &str, theta: u32) -> Self {
        RuleFile {
            neighborhood: NeighborhoodSpec::Named(neighborhood.into()),
            kind: KindName::Threshold,
            theta: Some(theta),
            minimal_sets: None,
            prob_entries: None,
            upward_closed: false,
        }
    }

    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let de = toml::Deserializer::parse(text).map_err(|e| LabError::config(file, "(document)", e.to_string()))?;
        serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            LabError::config(file, field, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).at(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// The rule as described, without checking the standing assumptions.
    pub fn build_unchecked(&self, file: &str) -> Result<MonotoneRule> {
        let nb = self.neighborhood.build(file)?;
        let missing = |f: &str| LabError::config(file, f, format!("required for kind {:?}", self.kind));
        match self.kind {
            KindName::Threshold => {
                let theta = self.theta.ok_or_else(|| missing("theta"))?;
                Ok(MonotoneRule::threshold(nb, theta))
            }
            KindName::Antichain => {
                let sets: Vec<Vec<Site>> =
                    self.minimal_sets.as_ref().ok_or_else(|| missing("minimal_sets"))?.iter().map(|s| sites(s)).collect();
                Ok(MonotoneRule::antichain(nb, &sets)?)
            }
            KindName::Probtable => {
                let entries: Vec<(Vec<Site>, f64)> = self
                    .prob_entries
                    .as_ref()
                    .ok_or_else(|| missing("prob_entries"))?
                    .iter()
                    .map(|e| (sites(&e.set), e.p))
                    .collect();
                if !self.upward_closed {
                    return Ok(MonotoneRule::prob_table(nb, &entries)?);
                }
                let pats = entries
                    .iter()
                    .map(|(s, p)| Ok((nb.pattern_of(s)?, *p)))
                    .collect::<Result<Vec<(Pattern, f64)>>>()?;
                let origin = nb.origin_index();
                Ok(MonotoneRule::prob_table_fn(nb, |s| {
                    if s.contains_index(origin) {
                        return 1.0;
                    }
                    pats.iter().filter(|(e, _)| e.is_subset_of(s)).map(|(_, p)| *p).fold(0.0, f64::max)
                })?)
            }
        }
    }

    /// The rule, rejected if it breaks monotonicity, `π(∅) = 0` or
    /// solidification. Asymmetric tables are accepted.
    pub fn build(&self, file: &str) -> Result<MonotoneRule> {
        let rule = self.build_unchecked(file)?;
        let report = validate_rule(&rule);
        if !report.admits_dynamics() {
            let lines: Vec<String> = report.violations.iter().map(|v| format!("\n  {v}")).collect();
            return Err(LabError::InvalidRule(lines.concat()));
        }
        Ok(rule)
    }

    /// Threshold rules only: the file describing `rule`.
    pub fn describe(rule: &MonotoneRule) -> Option<Self> {
        match rule.kind() {
            RuleKind::Threshold(theta) => Some(RuleFile {
                neighborhood: NeighborhoodSpec::Offsets(rule.neighborhood().offsets().iter().map(|s| [s.x, s.y]).collect()),
                kind: KindName::Threshold,
                theta: Some(*theta),
                minimal_sets: None,
                prob_entries: None,
                upward_closed: false,
            }),
            _ => None,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("rule files serialize")
    }
}

/// Loads and validates a rule file.
pub fn load_rule(path: &Path) -> Result<(RuleFile, MonotoneRule)> {
    let file = RuleFile::load(path)?;
    let rule = file.build(&path.display().to_string())?;
    Ok((file, rule))
}
