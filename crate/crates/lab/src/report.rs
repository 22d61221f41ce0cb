//! CSV tables. Column sets are versioned by [`SCHEMA_VERSION`]; a header
//! only changes together with a version bump.

use std::path::Path;

use polygrowth::geometry::{Case, SurveyRow};
use polygrowth::{RationalPoint, RationalPolygon};
use serde::Serialize;

use crate::error::{IoContext, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct SurveyCsv {
    pub rho: i64,
    pub theta: u32,
    pub case: u8,
    pub supercritical: bool,
    pub quasi_additive: bool,
    pub exactly_stable: bool,
    pub vertex_count: usize,
    pub kprime_points: usize,
    pub kprime_segments: usize,
}

impl SurveyCsv {
    pub fn new(rho: i64, r: &SurveyRow) -> Self {
        SurveyCsv {
            rho,
            theta: r.theta,
            case: case_number(r.label.case),
            supercritical: r.label.supercritical,
            quasi_additive: r.label.quasi_additive,
            exactly_stable: r.exactly_stable,
            vertex_count: r.vertex_count,
            kprime_points: r.kprime_points,
            kprime_segments: r.kprime_segments,
        }
    }
}

pub fn case_number(c: Case) -> u8 {
    match c {
        Case::Case1 => 1,
        Case::Case2 => 2,
        Case::Case3 => 3,
    }
}

#[derive(Debug, Serialize)]
pub struct VelocityCsv {
    pub direction_x: i64,
    pub direction_y: i64,
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct KpolyCsv {
    pub direction_x: i64,
    pub direction_y: i64,
    pub estimate: f64,
    pub stderr: f64,
    /// Empirical point `u / w_p(u)`; empty when the estimate is not positive.
    pub radial_x: Option<f64>,
    pub radial_y: Option<f64>,
    /// The same point for the deterministic skeleton.
    pub skeleton_x: Option<f64>,
    pub skeleton_y: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct GrowthCsv {
    pub replica: u64,
    pub t: u64,
    pub occupied: u64,
    /// Distance to `t L` of the skeleton; empty when it has no limit shape.
    pub hausdorff: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct InterfaceCsv {
    pub alpha: f64,
    pub n: usize,
    pub mean: f64,
    pub stderr: f64,
    pub limit: f64,
}

#[derive(Debug, Serialize)]
pub struct CurveCsv {
    pub p: f64,
    pub y: f64,
    pub x_left: f64,
    pub x_right: f64,
}

#[derive(Debug, Serialize)]
pub struct PolygonCsv {
    pub shape: &'static str,
    pub index: usize,
    pub x: String,
    pub y: String,
    pub x_float: f64,
    pub y_float: f64,
}

impl PolygonCsv {
    pub fn rows(shape: &'static str, poly: &RationalPolygon) -> Vec<PolygonCsv> {
        poly.vertices()
            .iter()
            .enumerate()
            .map(|(index, p)| {
                let (x_float, y_float) = p.to_f64();
                PolygonCsv { shape, index, x: p.x.to_string(), y: p.y.to_string(), x_float, y_float }
            })
            .collect()
    }
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => crate::error::LabError::Io { path: path.into(), source: io },
        other => crate::error::LabError::Usage(format!("{other:?}")),
    })?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().at(path)
}

/// `(x, y)` with exact coordinates, e.g. `(-1/3, 2/3)`.
pub fn exact_point(p: &RationalPoint) -> String {
    format!("({}, {})", p.x, p.y)
}
