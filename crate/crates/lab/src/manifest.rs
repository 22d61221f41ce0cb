//! Run manifests: everything needed to regenerate a run's artifacts.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{IoContext, LabError, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub command: String,
    /// The resolved configuration, rule inlined.
    pub config: serde_json::Value,
    pub master_seed: Option<u64>,
    pub tool_version: String,
    /// Artifact file names, relative to the manifest's directory.
    pub outputs: Vec<String>,
    /// Recorded for information; results never depend on it.
    pub threads: usize,
    /// Filled in when the run finishes.
    pub wall_clock_seconds: Option<f64>,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, master_seed: Option<u64>, outputs: Vec<String>) -> Self {
        RunManifest {
            command: command.into(),
            config,
            master_seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            outputs,
            threads: rayon::current_num_threads(),
            wall_clock_seconds: None,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(&path, text).at(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).at(path)?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(de)
            .map_err(|e| LabError::config(path.display().to_string(), e.path().to_string(), e.into_inner().to_string()))
    }
}
