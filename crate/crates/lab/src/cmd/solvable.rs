use std::fmt::Write as _;
use std::path::Path;

use polygrowth::solvable::{interface_limit, shape_lp, simulate_interface_replica, ShapeCurve};
use rayon::prelude::*;
use serde::Serialize;

use super::{with_manifest, write_text};
use crate::config::{seed_or_fresh, SolvableConfig};
use crate::error::Result;
use crate::report::{write_csv, CurveCsv, InterfaceCsv};
use crate::svg::{Figure, Item, Style};

pub const OUTPUTS: [&str; 4] = ["interface.csv", "curve.csv", "solvable.svg", "manifest.json"];
pub const FAMILY_OUTPUTS: [&str; 3] = ["curves.csv", "shape_family.svg", "manifest.json"];

/// Samples per curve.
const SAMPLES: usize = 201;

pub fn resolve(mut cfg: SolvableConfig, seed: Option<u64>) -> SolvableConfig {
    cfg.master_seed = Some(seed.or(cfg.master_seed).unwrap_or_else(|| seed_or_fresh(None)));
    cfg
}

fn curve_rows(c: &ShapeCurve) -> Vec<CurveCsv> {
    c.sample(c.y_min, c.y_max, SAMPLES)
        .into_iter()
        .map(|(y, x_left, x_right)| CurveCsv { p: c.p, y, x_left, x_right })
        .collect()
}

/// Right side bottom-up, then left side top-down.
fn outline(c: &ShapeCurve) -> Vec<(f64, f64)> {
    let s = c.sample(c.y_min, c.y_max, SAMPLES);
    let mut pts: Vec<(f64, f64)> = s.iter().map(|&(y, _, xr)| (xr, y)).collect();
    pts.extend(s.iter().rev().map(|&(y, xl, _)| (xl, y)));
    pts
}

pub fn run(cfg: &SolvableConfig, out: &Path) -> Result<String> {
    let seed = cfg.master_seed.expect("resolved config");
    let curve = shape_lp(cfg.p)?;
    let mut summary = String::new();
    with_manifest("solvable", cfg, Some(seed), &OUTPUTS, out, || {
        let runs = (0..cfg.runs)
            .into_par_iter()
            .map(|r| simulate_interface_replica(cfg.p, cfg.horizon, seed, r))
            .collect::<polygrowth::Result<Vec<_>>>()?;
        let tf = cfg.horizon as f64;
        let mut rows = Vec::new();
        for &alpha in &cfg.alphas {
            let n = (alpha * tf).floor() as usize;
            let vals: Vec<f64> = runs.iter().map(|r| r.get(n) as f64 / tf).collect();
            let k = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / k;
            let var = if vals.len() > 1 { vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0) } else { f64::INFINITY };
            let limit = interface_limit(cfg.p, alpha)?;
            rows.push(InterfaceCsv { alpha, n, mean, stderr: (var / k).sqrt(), limit });
        }
        write_csv(&out.join("interface.csv"), &rows)?;
        write_csv(&out.join("curve.csv"), &curve_rows(&curve))?;
        let mut fig = Figure::new(format!("L_p for p = {}", cfg.p));
        fig.push(Item::Polygon { points: outline(&curve), stroke: "black".into(), fill: None, dashed: false });
        write_text(&out.join("solvable.svg"), &fig.render(&Style::default()))?;
        let _ = writeln!(summary, "p = {}, T = {}, {} runs, seed {seed}", cfg.p, cfg.horizon, cfg.runs);
        let _ = writeln!(summary, "alpha   h/T mean   stderr    limit");
        for r in &rows {
            let _ = writeln!(summary, "{:<6}  {:>8.5}  {:>8.5}  {:>8.5}", r.alpha, r.mean, r.stderr, r.limit);
        }
        Ok(())
    })?;
    Ok(summary)
}

#[derive(Debug, Serialize)]
pub struct FamilyConfig {
    pub shape_family: bool,
}

/// Deterministic overlay of `L_p` for `p = 0, 0.1, ..., 1`.
pub fn shape_family(out: &Path) -> Result<String> {
    with_manifest("solvable", &FamilyConfig { shape_family: true }, None, &FAMILY_OUTPUTS, out, || {
        let mut rows = Vec::new();
        let mut fig = Figure::new("L_p for p = 0, 0.1, ..., 1");
        for i in 0..=10 {
            let c = shape_lp(i as f64 / 10.0)?;
            rows.extend(curve_rows(&c));
            let shade = 20 * i;
            fig.push(Item::Polygon { points: outline(&c), stroke: format!("rgb({shade},{shade},{})", 255 - shade), fill: None, dashed: false });
        }
        write_csv(&out.join("curves.csv"), &rows)?;
        write_text(&out.join("shape_family.svg"), &fig.render(&Style::default()))
    })?;
    Ok("11 curves written\n".into())
}
