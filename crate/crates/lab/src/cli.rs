use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cmd::{geometry, grow, render, solvable, strip};
use crate::config::{from_json, load_toml, GrowConfig, KpolyConfig, SolvableConfig, StripFileConfig};
use crate::error::{LabError, Result};
use crate::manifest::RunManifest;
use crate::rulefile::{load_rule, RuleFile};

/// Exact shapes and random perturbations of monotone growth cellular automata.
#[derive(Debug, Parser)]
#[command(name = "polygrowth", version)]
pub struct Cli {
    /// Worker threads for replicas and directions (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a rule file against the standing assumptions (exit 1 if violated).
    Validate { rule: PathBuf },
    /// Print K and its polar L (the Wulff shape) with exact vertices.
    Wulff {
        rule: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Classify a rule: case, supercriticality, quasi-additivity and contact set.
    Classify {
        rule: PathBuf,
        /// K, its convex hull (dashed) and the contact set highlighted.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Classify every supercritical threshold of the range-rho box neighborhood.
    Survey {
        #[arg(long)]
        rho: i64,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Overlay of the K family.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Grow a random p-perturbation from a finite seed.
    Grow(GrowArgs),
    /// Half-space velocities from tilted periodic strips.
    Strip(StripArgs),
    /// Empirical K from strip velocities over a fan of directions.
    Kpoly(KpolyArgs),
    /// The solvable seven-site model: interface runs against the exact shape.
    Solvable(SolvableArgs),
    /// Render a stored state to SVG.
    Render {
        /// Run-length encoded state.
        state: PathBuf,
        /// Draw t L of this rule on top.
        #[arg(long)]
        rule: Option<PathBuf>,
        /// Overlay time; defaults to the state's recorded time.
        #[arg(long, requires = "rule")]
        time: Option<u64>,
        #[arg(long, default_value_t = 640)]
        size: u32,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Re-run a manifest into a new directory.
    Replay {
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Master seed; a fresh one is generated and printed if absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
    /// TOML configuration, instead of the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GrowArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub rule: Option<PathBuf>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub p: Option<f64>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub horizon: Option<u64>,
    /// Half-width of the initial block (default: a filling box).
    #[arg(long, conflicts_with = "config")]
    pub initial_radius: Option<i64>,
    #[arg(long, conflicts_with = "config", default_value_t = 1)]
    pub replicas: u64,
    /// Measure and band the picture every k steps.
    #[arg(long, conflicts_with = "config")]
    pub snapshot_every: Option<u64>,
}

#[derive(Debug, Args)]
pub struct StripArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub rule: Option<PathBuf>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub p: Option<f64>,
    /// Outward normal as X,Y; repeatable.
    #[arg(long = "direction", conflicts_with = "config", required_unless_present = "config", value_parser = parse_pair)]
    pub directions: Vec<[i64; 2]>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub width: Option<u32>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub horizon: Option<u64>,
    #[arg(long, conflicts_with = "config")]
    pub burn_in: Option<u64>,
    #[arg(long, conflicts_with = "config", default_value_t = 16)]
    pub blocks: usize,
}

#[derive(Debug, Args)]
pub struct KpolyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub rule: Option<PathBuf>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub p: Option<f64>,
    /// Use every primitive direction with coordinates in [-k, k].
    #[arg(long, conflicts_with = "config", default_value_t = 3)]
    pub max_coord: i64,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub width: Option<u32>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub horizon: Option<u64>,
    #[arg(long, conflicts_with = "config")]
    pub burn_in: Option<u64>,
    #[arg(long, conflicts_with = "config", default_value_t = 16)]
    pub blocks: usize,
}

#[derive(Debug, Args)]
pub struct SolvableArgs {
    /// Master seed; a fresh one is generated and printed if absent.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, conflicts_with_all = ["p", "horizon"])]
    pub config: Option<PathBuf>,
    /// Emit the exact shapes for p = 0, 0.1, ..., 1 and nothing else.
    #[arg(long, conflicts_with_all = ["config", "p", "horizon", "seed"])]
    pub shape_family: bool,
    #[arg(long, required_unless_present_any = ["config", "shape_family"])]
    pub p: Option<f64>,
    #[arg(long, required_unless_present_any = ["config", "shape_family"])]
    pub horizon: Option<u64>,
    #[arg(long, default_value_t = 20)]
    pub runs: u64,
    /// Positions n = floor(alpha T) to report; comma separated.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
}

fn parse_pair(s: &str) -> std::result::Result<[i64; 2], String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok([p(a)?, p(b)?])
}

fn rule_from_flag(path: &Option<PathBuf>) -> Result<RuleFile> {
    let path = path.as_ref().ok_or_else(|| LabError::Usage("--rule is required".into()))?;
    RuleFile::load(path)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| LabError::Usage(format!("--{flag} is required")))
}

fn config_base(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Runs a command and returns the text for stdout.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Validate { rule } => {
            let (text, ok) = geometry::validate(&rule)?;
            if ok {
                Ok(text)
            } else {
                print!("{text}");
                Err(LabError::InvalidRule(rule.display().to_string()))
            }
        }
        Command::Wulff { rule, svg, csv } => {
            let (_, r) = load_rule(&rule)?;
            geometry::wulff(&r, svg.as_deref(), csv.as_deref())
        }
        Command::Classify { rule, svg } => {
            let (_, r) = load_rule(&rule)?;
            geometry::classify(&r, svg.as_deref())
        }
        Command::Survey { rho, csv, svg } => geometry::survey_cmd(rho, csv.as_deref(), svg.as_deref()),
        Command::Grow(a) => {
            let (cfg, base, origin) = match &a.common.config {
                Some(path) => (load_toml::<GrowConfig>(path)?, config_base(path), path.display().to_string()),
                None => (
                    GrowConfig {
                        rule: Some(rule_from_flag(&a.rule)?),
                        rule_file: None,
                        p: need(a.p, "p")?,
                        horizon: need(a.horizon, "horizon")?,
                        initial_radius: a.initial_radius,
                        replicas: a.replicas,
                        snapshot_every: a.snapshot_every,
                        master_seed: None,
                    },
                    PathBuf::new(),
                    "flags".into(),
                ),
            };
            let cfg = grow::resolve(cfg, a.common.seed, &base, &origin)?;
            check_positive(cfg.replicas, "replicas")?;
            grow::run(&cfg, &a.common.out)
        }
        Command::Strip(a) => {
            let (cfg, base, origin) = match &a.common.config {
                Some(path) => (load_toml::<StripFileConfig>(path)?, config_base(path), path.display().to_string()),
                None => (
                    StripFileConfig {
                        rule: Some(rule_from_flag(&a.rule)?),
                        rule_file: None,
                        p: need(a.p, "p")?,
                        directions: a.directions.clone(),
                        width: need(a.width, "width")?,
                        horizon: need(a.horizon, "horizon")?,
                        burn_in: a.burn_in,
                        blocks: a.blocks,
                        replica: 0,
                        master_seed: None,
                    },
                    PathBuf::new(),
                    "flags".into(),
                ),
            };
            let cfg = strip::resolve_strip(cfg, a.common.seed, &base, &origin)?;
            strip::run_strip(&cfg, &a.common.out)
        }
        Command::Kpoly(a) => {
            let (cfg, base, origin) = match &a.common.config {
                Some(path) => (load_toml::<KpolyConfig>(path)?, config_base(path), path.display().to_string()),
                None => (
                    KpolyConfig {
                        rule: Some(rule_from_flag(&a.rule)?),
                        rule_file: None,
                        p: need(a.p, "p")?,
                        max_coord: a.max_coord,
                        width: need(a.width, "width")?,
                        horizon: need(a.horizon, "horizon")?,
                        burn_in: a.burn_in,
                        blocks: a.blocks,
                        master_seed: None,
                    },
                    PathBuf::new(),
                    "flags".into(),
                ),
            };
            let cfg = strip::resolve_kpoly(cfg, a.common.seed, &base, &origin)?;
            strip::run_kpoly(&cfg, &a.common.out)
        }
        Command::Solvable(a) => {
            if a.shape_family {
                return solvable::shape_family(&a.out);
            }
            let cfg = match &a.config {
                Some(path) => load_toml::<SolvableConfig>(path)?,
                None => SolvableConfig {
                    p: need(a.p, "p")?,
                    horizon: need(a.horizon, "horizon")?,
                    runs: a.runs,
                    alphas: a.alphas.clone().unwrap_or_else(|| (1..10).map(|i| i as f64 / 10.0).collect()),
                    master_seed: None,
                },
            };
            check_positive(cfg.runs, "runs")?;
            solvable::run(&solvable::resolve(cfg, a.seed), &a.out)
        }
        Command::Render { state, rule, time, size, out } => {
            let rule = rule.as_deref().map(load_rule).transpose()?.map(|(_, r)| r);
            render::render(&state, rule.as_ref().map(|r| (r, time)), &out, size)?;
            Ok(format!("wrote {}\n", out.display()))
        }
        Command::Replay { manifest, out } => replay(&manifest, &out),
    }
}

fn check_positive(v: u64, field: &str) -> Result<()> {
    if v == 0 {
        return Err(LabError::config("config", field, "must be at least 1"));
    }
    Ok(())
}

/// Regenerates every artifact of a manifest under `out`.
pub fn replay(path: &Path, out: &Path) -> Result<String> {
    let m = RunManifest::read(path)?;
    let origin = path.display().to_string();
    match m.command.as_str() {
        "grow" => grow::run(&from_json(&m.config, &origin)?, out),
        "strip" => strip::run_strip(&from_json(&m.config, &origin)?, out),
        "kpoly" => strip::run_kpoly(&from_json(&m.config, &origin)?, out),
        "solvable" if m.config.get("shape_family").is_some() => solvable::shape_family(out),
        "solvable" => solvable::run(&from_json(&m.config, &origin)?, out),
        other => Err(LabError::config(origin, "command", format!("cannot replay {other:?}"))),
    }
}
