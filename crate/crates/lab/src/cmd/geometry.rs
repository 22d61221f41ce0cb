use std::fmt::Write as _;
use std::path::Path;

use polygrowth::ca::validate_rule;
use polygrowth::geometry::{k_family, k_prime, k_star, survey, wulff_shape, Case, CaseLabel};
use polygrowth::{MonotoneRule, RationalPolygon};

use super::write_text;
use crate::error::Result;
use crate::report::{case_number, exact_point, write_csv, PolygonCsv, SurveyCsv};
use crate::rulefile::RuleFile;
use crate::svg::{Figure, Item, Style};

/// Report text and whether the rule is valid.
pub fn validate(path: &Path) -> Result<(String, bool)> {
    let file = RuleFile::load(path)?;
    let rule = file.build_unchecked(&path.display().to_string())?;
    let report = validate_rule(&rule);
    let mut out = String::new();
    if report.is_valid() {
        let _ = writeln!(out, "valid: {} sites, {:?}", rule.neighborhood().len(), file.kind);
    } else {
        let _ = writeln!(out, "{} violation(s):", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(out, "  {v}");
        }
        if report.admits_dynamics() {
            let _ = writeln!(out, "(only asymmetry: random runs still accept this rule)");
        }
    }
    Ok((out, report.is_valid()))
}

pub fn describe_label(label: &CaseLabel) -> String {
    format!(
        "Case {}, {}, {}",
        case_number(label.case),
        if label.supercritical { "supercritical" } else { "not supercritical" },
        if label.quasi_additive { "quasi-additive" } else { "not quasi-additive" }
    )
}

fn vertex_lines(out: &mut String, name: &str, poly: &RationalPolygon) {
    let _ = writeln!(out, "{name} ({} vertices):", poly.len());
    for v in poly.vertices() {
        let _ = writeln!(out, "  {}", exact_point(v));
    }
}

pub fn classify(rule: &MonotoneRule, svg: Option<&Path>) -> Result<String> {
    let star = k_star(rule)?;
    let kp = k_prime(&star);
    let label = polygrowth::geometry::classify_star(&star);
    let mut out = describe_label(&label) + "\n";
    vertex_lines(&mut out, "K", &star.as_polygon());
    let points = kp.isolated_points();
    let segments = kp.segments();
    let _ = writeln!(out, "contact set: {} isolated point(s), {} segment(s)", points.len(), segments.len());
    for p in &points {
        let _ = writeln!(out, "  point {}", exact_point(p));
    }
    for (a, b, _) in &segments {
        let _ = writeln!(out, "  segment {} -- {}", exact_point(a), exact_point(b));
    }
    if let Some(path) = svg {
        let mut fig = Figure::new(describe_label(&label));
        fig.push(Item::polygon(&star.as_polygon(), "black"));
        fig.push(Item::Polygon { points: star.convex_hull().to_f64(), stroke: "#888".into(), fill: None, dashed: true });
        for (a, b, _) in &segments {
            fig.push(Item::Curve { points: vec![a.to_f64(), b.to_f64()], stroke: "crimson".into() });
        }
        fig.push(Item::Markers { points: points.iter().map(|p| p.to_f64()).collect(), fill: "crimson".into() });
        write_text(path, &fig.render(&Style::default()))?;
    }
    Ok(out)
}

pub fn wulff(rule: &MonotoneRule, svg: Option<&Path>, csv: Option<&Path>) -> Result<String> {
    let k = k_star(rule)?.as_polygon();
    let l = wulff_shape(rule)?;
    let mut out = String::new();
    vertex_lines(&mut out, "K", &k);
    vertex_lines(&mut out, "L", &l);
    if let Some(path) = csv {
        let mut rows = PolygonCsv::rows("K", &k);
        rows.extend(PolygonCsv::rows("L", &l));
        write_csv(path, &rows)?;
    }
    if let Some(path) = svg {
        let mut fig = Figure::new("Wulff shape");
        fig.push(Item::Polygon { points: l.to_f64(), stroke: "black".into(), fill: Some("#dde6f0".into()), dashed: false });
        fig.push(Item::Markers { points: l.vertices().iter().map(|p| p.to_f64()).collect(), fill: "black".into() });
        write_text(path, &fig.render(&Style::default()))?;
    }
    Ok(out)
}

pub fn survey_cmd(rho: i64, csv: Option<&Path>, svg: Option<&Path>) -> Result<String> {
    let s = survey(rho)?;
    let mut out = String::new();
    let _ = writeln!(out, "range {rho}: {} supercritical thresholds", s.rows.len());
    for (name, case) in [("Case 1", Case::Case1), ("Case 2", Case::Case2), ("Case 3", Case::Case3)] {
        let _ = writeln!(out, "  {name}: {:?}", s.thetas_with(case));
    }
    let _ = writeln!(out, "  not exactly stable: {:?}", s.unstable());
    let _ = writeln!(out, "  lambda* values: {:?}", s.lambda_set);
    if !s.disagreements.is_empty() {
        let _ = writeln!(out, "  segment and lambda* tests disagree at {:?}", s.disagreements);
    }
    if let Some(path) = csv {
        let rows: Vec<SurveyCsv> = s.rows.iter().map(|r| SurveyCsv::new(rho, r)).collect();
        write_csv(path, &rows)?;
    }
    if let Some(path) = svg {
        let mut fig = Figure::new(format!("K family, range {rho}"));
        let family = k_family(rho)?;
        for (i, star) in family.iter().enumerate() {
            let shade = 40 + (180 * i / family.len().max(1)) as u32;
            fig.push(Item::polygon(&star.as_polygon(), &format!("rgb({shade},{shade},{shade})")));
        }
        write_text(path, &fig.render(&Style::default()))?;
    }
    Ok(out)
}
