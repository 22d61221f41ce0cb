//! Subcommand bodies. Each stochastic command is a function of its resolved
//! configuration and an output directory, so `replay` can call it directly.

pub mod geometry;
pub mod grow;
pub mod render;
pub mod solvable;
pub mod strip;

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::{IoContext, Result};
use crate::manifest::RunManifest;

/// Writes the manifest, runs `body`, then records the wall-clock time.
pub fn with_manifest<C: Serialize>(
    command: &str,
    config: &C,
    master_seed: Option<u64>,
    outputs: &[&str],
    out: &Path,
    body: impl FnOnce() -> Result<()>,
) -> Result<()> {
    std::fs::create_dir_all(out).at(out)?;
    let value = serde_json::to_value(config)?;
    let mut manifest = RunManifest::new(command, value, master_seed, outputs.iter().map(|s| s.to_string()).collect());
    manifest.write(out)?;
    let start = Instant::now();
    body()?;
    manifest.wall_clock_seconds = Some(start.elapsed().as_secs_f64());
    manifest.write(out)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).at(dir)?;
    }
    std::fs::write(path, text).at(path)
}
