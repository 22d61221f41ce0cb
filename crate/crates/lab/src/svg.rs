//! Hand-built SVG for polygons, lattice cells, markers and curves.
//!
//! World coordinates have y pointing up and the origin at the center of the
//! canvas; the emitter flips y. Output depends only on the figure and the
//! style, so identical input gives identical bytes.

use std::fmt::Write as _;

use polygrowth::{RationalPolygon, Site};

#[derive(Clone, Debug, PartialEq)]
pub struct Style {
    /// Canvas side in pixels.
    pub size: u32,
    /// Empty border, as a fraction of the content extent.
    pub margin: f64,
    pub stroke_width: f64,
    pub marker_radius: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style { size: 640, margin: 0.05, stroke_width: 1.5, marker_radius: 3.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    /// Closed outline.
    Polygon { points: Vec<(f64, f64)>, stroke: String, fill: Option<String>, dashed: bool },
    /// Open polyline.
    Curve { points: Vec<(f64, f64)>, stroke: String },
    /// Filled dots of fixed pixel radius.
    Markers { points: Vec<(f64, f64)>, fill: String },
    /// Unit cells centered on lattice sites; the color is `palette[band % len]`.
    Cells { cells: Vec<(Site, usize)>, palette: Vec<String> },
}

impl Item {
    pub fn polygon(poly: &RationalPolygon, stroke: &str) -> Item {
        Item::Polygon { points: poly.to_f64(), stroke: stroke.into(), fill: None, dashed: false }
    }

    fn extent(&self) -> Option<(f64, f64, f64, f64)> {
        let pts: Vec<(f64, f64)> = match self {
            Item::Polygon { points, .. } | Item::Curve { points, .. } | Item::Markers { points, .. } => points.clone(),
            Item::Cells { cells, .. } => cells
                .iter()
                .flat_map(|(s, _)| [(s.x as f64 - 0.5, s.y as f64 - 0.5), (s.x as f64 + 0.5, s.y as f64 + 0.5)])
                .collect(),
        };
        pts.iter().filter(|p| p.0.is_finite() && p.1.is_finite()).fold(None, |acc, &(x, y)| match acc {
            None => Some((x, y, x, y)),
            Some((a, b, c, d)) => Some((a.min(x), b.min(y), c.max(x), d.max(y))),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Figure {
    pub title: Option<String>,
    pub items: Vec<Item>,
}

impl Figure {
    pub fn new(title: impl Into<String>) -> Self {
        Figure { title: Some(title.into()), items: Vec::new() }
    }

    pub fn push(&mut self, item: Item) -> &mut Self {
        self.items.push(item);
        self
    }

    pub fn render(&self, style: &Style) -> String {
        let n = style.size as f64;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
            style.size
        );
        if let Some(t) = &self.title {
            let _ = writeln!(out, "<title>{}</title>", escape(t));
        }
        let _ = writeln!(out, r#"<rect width="{0}" height="{0}" fill="white"/>"#, style.size);
        let ext = self.items.iter().filter_map(Item::extent).reduce(|a, b| (a.0.min(b.0), a.1.min(b.1), a.2.max(b.2), a.3.max(b.3)));
        if let Some((x0, y0, x1, y1)) = ext {
            // Square view centered on the origin, covering the content.
            let half = [x0.abs(), y0.abs(), x1.abs(), y1.abs()].into_iter().fold(1e-9, f64::max) * (1.0 + 2.0 * style.margin);
            let scale = n / (2.0 * half);
            let map = |(x, y): (f64, f64)| ((x + half) * scale, (half - y) * scale);
            for item in &self.items {
                write_item(&mut out, item, &map, scale, style);
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn write_item(out: &mut String, item: &Item, map: &dyn Fn((f64, f64)) -> (f64, f64), scale: f64, style: &Style) {
    match item {
        Item::Polygon { points, stroke, fill, dashed } => {
            if points.is_empty() {
                return;
            }
            let fill = fill.as_deref().unwrap_or("none");
            let dash = if *dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                out,
                r#"<path d="{}Z" fill="{}" stroke="{}" stroke-width="{}"{}/>"#,
                path(points, map),
                escape(fill),
                escape(stroke),
                num(style.stroke_width),
                dash
            );
        }
        Item::Curve { points, stroke } => {
            if points.is_empty() {
                return;
            }
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
                path(points, map),
                escape(stroke),
                num(style.stroke_width)
            );
        }
        Item::Markers { points, fill } => {
            for &p in points {
                let (x, y) = map(p);
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#, num(x), num(y), num(style.marker_radius), escape(fill));
            }
        }
        Item::Cells { cells, palette } => {
            if palette.is_empty() {
                return;
            }
            let mut sorted = cells.clone();
            sorted.sort_by_key(|(s, b)| (std::cmp::Reverse(s.y), s.x, *b));
            let mut i = 0;
            while i < sorted.len() {
                let (start, band) = sorted[i];
                let mut j = i;
                while j + 1 < sorted.len() && sorted[j + 1].0 == Site::new(sorted[j].0.x + 1, start.y) && sorted[j + 1].1 == band {
                    j += 1;
                }
                let (x, y) = map((start.x as f64 - 0.5, start.y as f64 + 0.5));
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                    num(x),
                    num(y),
                    num((j - i + 1) as f64 * scale),
                    num(scale),
                    escape(&palette[band % palette.len()])
                );
                i = j + 1;
            }
        }
    }
}

fn path(points: &[(f64, f64)], map: &dyn Fn((f64, f64)) -> (f64, f64)) -> String {
    let mut d = String::new();
    for (i, &p) in points.iter().enumerate() {
        let (x, y) = map(p);
        let _ = write!(d, "{}{} {} ", if i == 0 { 'M' } else { 'L' }, num(x), num(y));
    }
    d.trim_end().to_string()
}

/// Three decimals, no negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use polygrowth::geometry::k_star;
    use polygrowth::{MonotoneRule, RationalPoint};

    #[test]
    fn unit_square_is_one_path_with_four_vertices() {
        let sq = RationalPolygon::convex_hull(&[
            RationalPoint::int(0, 0),
            RationalPoint::int(1, 0),
            RationalPoint::int(1, 1),
            RationalPoint::int(0, 1),
        ]);
        let mut f = Figure::default();
        f.push(Item::polygon(&sq, "black"));
        let svg = f.render(&Style::default());
        assert_eq!(svg.matches("<path").count(), 1);
        let d = svg.split("d=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(d.matches(['M', 'L']).count(), 4);
    }

    #[test]
    fn moore_star_has_sixteen_vertices() {
        let star = k_star(&MonotoneRule::box_threshold(1, 3)).unwrap();
        let mut f = Figure::default();
        f.push(Item::polygon(&star.as_polygon(), "black"));
        let svg = f.render(&Style::default());
        let d = svg.split("d=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(d.matches(['M', 'L']).count(), 16);
    }

    #[test]
    fn empty_figure_is_a_blank_canvas() {
        let svg = Figure::default().render(&Style::default());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn byte_stable_and_runs_merged() {
        let cells: Vec<(Site, usize)> = (0..5).map(|x| (Site::new(x, 0), 0)).chain([(Site::new(0, 1), 1)]).collect();
        let mut f = Figure::new("cells");
        f.push(Item::Cells { cells, palette: vec!["#333".into(), "#999".into()] });
        let a = f.render(&Style::default());
        assert_eq!(a, f.render(&Style::default()));
        assert_eq!(a.matches("<rect").count(), 3);
    }
}
