use std::fmt::Write as _;
use std::path::Path;

use polygrowth::geometry::{wulff_shape, Q};
use polygrowth::sim::{default_seed, grow_finite_replica, hausdorff_to_polygon, PerturbationSpec, Trajectory};
use polygrowth::{Rect, Site};
use rayon::prelude::*;

use super::{with_manifest, write_text};
use crate::config::{resolve_rule, seed_or_fresh, GrowConfig};
use crate::error::Result;
use crate::report::{write_csv, GrowthCsv};
use crate::rle::{encode, CellList};
use crate::svg::{Figure, Item, Style};

pub const OUTPUTS: [&str; 4] = ["growth.csv", "final.rle", "growth.svg", "manifest.json"];

/// Fixes the seed and inlines the rule.
pub fn resolve(mut cfg: GrowConfig, seed: Option<u64>, base: &Path, origin: &str) -> Result<GrowConfig> {
    resolve_rule(&mut cfg.rule, &mut cfg.rule_file, base, origin)?;
    cfg.master_seed = Some(seed.or(cfg.master_seed).unwrap_or_else(|| seed_or_fresh(None)));
    Ok(cfg)
}

pub fn run(cfg: &GrowConfig, out: &Path) -> Result<String> {
    let rule = cfg.rule.as_ref().expect("resolved config").build("config.rule")?;
    let seed = cfg.master_seed.expect("resolved config");
    let spec = PerturbationSpec::standard(rule.clone(), cfg.p)?;
    let a0: Vec<Site> = match cfg.initial_radius {
        Some(r) => Rect::centered(r).sites().collect(),
        None => default_seed(&rule),
    };
    let shape = wulff_shape(&spec.skeleton()).ok();
    let mut summary = String::new();
    with_manifest("grow", cfg, Some(seed), &OUTPUTS, out, || {
        let runs: Vec<Trajectory> = (0..cfg.replicas)
            .into_par_iter()
            .map(|r| grow_finite_replica(&spec, &a0, cfg.horizon, seed, r, Some(cfg.snapshot_every.unwrap_or(cfg.horizon).max(1))))
            .collect::<polygrowth::Result<_>>()?;
        let mut rows = Vec::new();
        for (r, run) in runs.iter().enumerate() {
            for snap in &run.snapshots {
                let t = snap.time();
                let hausdorff = match &shape {
                    Some(l) if t > 0 => Some(hausdorff_to_polygon(snap, l, Q::from_integer(t as i128))?),
                    _ => None,
                };
                rows.push(GrowthCsv { replica: r as u64, t, occupied: snap.count(), hausdorff });
            }
        }
        write_csv(&out.join("growth.csv"), &rows)?;
        let first = &runs[0];
        write_text(&out.join("final.rle"), &encode(&CellList::from_state(&first.final_state)))?;
        write_text(&out.join("growth.svg"), &banded(first, cfg, shape.as_ref()))?;
        let last: Vec<&GrowthCsv> = rows.iter().filter(|g| g.t == cfg.horizon).collect();
        let _ = writeln!(summary, "{} replica(s), T = {}, seed {seed}", cfg.replicas, cfg.horizon);
        for g in last {
            let d = g.hausdorff.map_or("n/a".to_string(), |d| format!("{d:.3}"));
            let _ = writeln!(summary, "  replica {}: {} cells, distance to T L {d}", g.replica, g.occupied);
        }
        Ok(())
    })?;
    Ok(summary)
}

/// Cells shaded by the period in which they were born, with `T L` on top.
fn banded(run: &Trajectory, cfg: &GrowConfig, shape: Option<&polygrowth::RationalPolygon>) -> String {
    let every = cfg.snapshot_every.unwrap_or((cfg.horizon / 10).max(1)).max(1);
    let cells = run.births.iter().map(|&(s, t)| (s, (t / every) as usize)).collect();
    let mut fig = Figure::new(format!("growth to T = {}", cfg.horizon));
    fig.push(Item::Cells { cells, palette: vec!["#4a5a6a".into(), "#9fb0c0".into()] });
    if let Some(l) = shape {
        fig.push(Item::polygon(&l.scaled(Q::from_integer(cfg.horizon as i128)), "crimson"));
    }
    fig.render(&Style::default())
}
