use std::fmt::Write as _;
use std::path::Path;

use polygrowth::geometry::speed::angle_cmp;
use polygrowth::geometry::{k_star, speed, Direction};
use polygrowth::sim::{strip_velocity, k_sample, PerturbationSpec, StripConfig, VelocityEstimate};
use polygrowth::{MonotoneRule, Site};
use rayon::prelude::*;

use super::{with_manifest, write_text};
use crate::config::{resolve_rule, seed_or_fresh, KpolyConfig, StripFileConfig};
use crate::error::{LabError, Result};
use crate::report::{write_csv, KpolyCsv, VelocityCsv};
use crate::svg::{Figure, Item, Style};

pub const STRIP_OUTPUTS: [&str; 2] = ["velocity.csv", "manifest.json"];
pub const KPOLY_OUTPUTS: [&str; 4] = ["velocity.csv", "kpoly.csv", "kpoly.svg", "manifest.json"];

pub fn resolve_strip(mut cfg: StripFileConfig, seed: Option<u64>, base: &Path, origin: &str) -> Result<StripFileConfig> {
    resolve_rule(&mut cfg.rule, &mut cfg.rule_file, base, origin)?;
    cfg.master_seed = Some(seed.or(cfg.master_seed).unwrap_or_else(|| seed_or_fresh(None)));
    Ok(cfg)
}

pub fn resolve_kpoly(mut cfg: KpolyConfig, seed: Option<u64>, base: &Path, origin: &str) -> Result<KpolyConfig> {
    resolve_rule(&mut cfg.rule, &mut cfg.rule_file, base, origin)?;
    cfg.master_seed = Some(seed.or(cfg.master_seed).unwrap_or_else(|| seed_or_fresh(None)));
    Ok(cfg)
}

struct Template {
    width: u32,
    horizon: u64,
    burn_in: Option<u64>,
    blocks: usize,
    replica: u64,
}

fn estimate_all(spec: &PerturbationSpec, dirs: &[Direction], t: &Template, seed: u64) -> Result<Vec<VelocityEstimate>> {
    let out = dirs
        .par_iter()
        .map(|&direction| {
            let cfg = StripConfig { direction, width: t.width, horizon: t.horizon, burn_in: t.burn_in, blocks: t.blocks, replica: t.replica };
            strip_velocity(spec, &cfg, seed)
        })
        .collect::<polygrowth::Result<Vec<_>>>()?;
    Ok(out)
}

fn velocity_rows(est: &[VelocityEstimate]) -> Vec<VelocityCsv> {
    est.iter()
        .map(|e| VelocityCsv {
            direction_x: e.direction.v().x,
            direction_y: e.direction.v().y,
            estimate: e.estimate,
            stderr: e.stderr,
            samples: e.samples,
            seed: e.master_seed,
        })
        .collect()
}

fn skeleton_speed(rule: &MonotoneRule, d: Direction) -> f64 {
    speed(&rule.skeleton(), d).unit_speed(d)
}

pub fn run_strip(cfg: &StripFileConfig, out: &Path) -> Result<String> {
    let rule = cfg.rule.as_ref().expect("resolved config").build("config.rule")?;
    let seed = cfg.master_seed.expect("resolved config");
    let spec = PerturbationSpec::standard(rule.clone(), cfg.p)?;
    let dirs = cfg
        .directions
        .iter()
        .enumerate()
        .map(|(i, &[x, y])| Direction::new(x, y).map_err(|e| LabError::config("config", format!("directions[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let t = Template { width: cfg.width, horizon: cfg.horizon, burn_in: cfg.burn_in, blocks: cfg.blocks, replica: cfg.replica };
    let mut summary = String::new();
    with_manifest("strip", cfg, Some(seed), &STRIP_OUTPUTS, out, || {
        let est = estimate_all(&spec, &dirs, &t, seed)?;
        write_csv(&out.join("velocity.csv"), &velocity_rows(&est))?;
        let _ = writeln!(summary, "direction    estimate     stderr  skeleton");
        for e in &est {
            let v = e.direction.v();
            let _ = writeln!(
                summary,
                "({:>3},{:>3})  {:>9.6}  {:>9.6}  {:>8.6}",
                v.x,
                v.y,
                e.estimate,
                e.stderr,
                skeleton_speed(&rule, e.direction)
            );
        }
        Ok(())
    })?;
    Ok(summary)
}

/// Primitive directions with both coordinates at most `k` in size, by angle.
pub fn directions_up_to(k: i64) -> Vec<Direction> {
    let mut v: Vec<Site> = (-k..=k)
        .flat_map(|x| (-k..=k).map(move |y| Site::new(x, y)))
        .filter(|s| !s.is_zero() && s.primitive() == *s)
        .collect();
    v.sort_by(|a, b| angle_cmp(*a, *b));
    v.into_iter().map(|s| Direction::from_vector(s).expect("nonzero")).collect()
}

pub fn run_kpoly(cfg: &KpolyConfig, out: &Path) -> Result<String> {
    let rule = cfg.rule.as_ref().expect("resolved config").build("config.rule")?;
    let seed = cfg.master_seed.expect("resolved config");
    let spec = PerturbationSpec::standard(rule.clone(), cfg.p)?;
    if cfg.max_coord < 1 {
        return Err(LabError::config("config", "max_coord", "must be at least 1"));
    }
    let dirs = directions_up_to(cfg.max_coord);
    let t = Template { width: cfg.width, horizon: cfg.horizon, burn_in: cfg.burn_in, blocks: cfg.blocks, replica: 0 };
    let skeleton = spec.skeleton();
    let star = k_star(&skeleton).ok();
    let mut summary = String::new();
    with_manifest("kpoly", cfg, Some(seed), &KPOLY_OUTPUTS, out, || {
        let est = estimate_all(&spec, &dirs, &t, seed)?;
        write_csv(&out.join("velocity.csv"), &velocity_rows(&est))?;
        let mut rows = Vec::new();
        let mut empirical = Vec::new();
        for e in &est {
            let v = e.direction.v();
            let w = speed(&skeleton, e.direction).unit_speed(e.direction);
            let (ux, uy) = e.direction.unit();
            let det = (w > 0.0).then(|| (ux / w, uy / w));
            let ks = k_sample(e.clone());
            empirical.extend(ks.radial);
            rows.push(KpolyCsv {
                direction_x: v.x,
                direction_y: v.y,
                estimate: e.estimate,
                stderr: e.stderr,
                radial_x: ks.radial.map(|r| r.0),
                radial_y: ks.radial.map(|r| r.1),
                skeleton_x: det.map(|d| d.0),
                skeleton_y: det.map(|d| d.1),
            });
        }
        write_csv(&out.join("kpoly.csv"), &rows)?;
        let mut fig = Figure::new(format!("empirical K at p = {}", cfg.p));
        if let Some(star) = &star {
            fig.push(Item::polygon(&star.as_polygon(), "#888"));
        }
        fig.push(Item::Polygon { points: empirical.clone(), stroke: "crimson".into(), fill: None, dashed: true });
        fig.push(Item::Markers { points: empirical.clone(), fill: "crimson".into() });
        write_text(&out.join("kpoly.svg"), &fig.render(&Style::default()))?;
        let _ = writeln!(summary, "{} directions, {} with positive speed, seed {seed}", est.len(), empirical.len());
        Ok(())
    })?;
    Ok(summary)
}
