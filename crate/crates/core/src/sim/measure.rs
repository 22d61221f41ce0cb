use alloc::format;
use alloc::vec::Vec;

use super::perturb::{PerturbationSpec, RandomRun};
use crate::ca::{iterate, Background, LatticeState, MonotoneRule, Rect, Site};
use crate::error::{Error, Result};
use crate::geometry::polygon::distance_to_convex;
use crate::geometry::rational::{floor_q, q, qr, Q};
use crate::geometry::star::wulff_shape;
use crate::geometry::{RationalPoint, RationalPolygon};

/// Hausdorff distance between the occupied cells of a finite state and
/// `t·P`. The boundary of `t·P` is sampled at spacing at most one cell, so
/// the second half of the maximum may be underestimated by up to `1/2`.
pub fn hausdorff_to_polygon(state: &LatticeState, poly: &RationalPolygon, t: Q) -> Result<f64> {
    if !matches!(state.background(), Background::Empty) {
        return Err(Error::InvalidInput("state is not finitely supported".into()));
    }
    let frontier = frontier_cells(state);
    if frontier.is_empty() {
        return Err(Error::EmptyState);
    }
    let tp = poly.scaled(t).to_f64();
    let mut d = 0.0f64;
    for s in &frontier {
        d = d.max(distance_to_convex(&tp, (s.x as f64, s.y as f64)));
    }
    let limit = state.window().width.max(state.window().height) * 2 + 8;
    for p in boundary_samples(&tp, 1.0) {
        let near = nearest_occupied(state, p, limit + (libm::fabs(p.0) + libm::fabs(p.1)) as i64);
        d = d.max(near.unwrap_or(f64::INFINITY));
    }
    Ok(d)
}

/// Occupied cells with a vacant 4-neighbor, on an empty background.
fn frontier_cells(state: &LatticeState) -> Vec<Site> {
    let g = &state.grid;
    let rect = g.rect();
    let words = g.words_per_row() as i64;
    let mut out = Vec::new();
    for r in 0..rect.height {
        for w in 0..words {
            let occ = g.word(r, w);
            if occ == 0 {
                continue;
            }
            let c = 64 * w;
            let inner = g.word(r + 1, w) & g.word(r - 1, w) & g.read64(r, c - 1) & g.read64(r, c + 1);
            let mut bits = occ & !inner;
            while bits != 0 {
                let b = bits.trailing_zeros() as i64;
                out.push(Site::new(rect.x0 + c + b, rect.y0 + r));
                bits &= bits - 1;
            }
        }
    }
    out
}

/// Points along a closed polyline at spacing at most `step`, vertices
/// included.
fn boundary_samples(poly: &[(f64, f64)], step: f64) -> Vec<(f64, f64)> {
    let n = poly.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let len = libm::hypot(b.0 - a.0, b.1 - a.1);
        let k = libm::ceil(len / step).max(1.0) as usize;
        for j in 0..k {
            let s = j as f64 / k as f64;
            out.push((a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1)));
        }
    }
    out
}

/// Distance from `p` to the nearest occupied cell, searching Chebyshev
/// rings around the cell containing `p` up to `max_ring`.
pub fn nearest_occupied(state: &LatticeState, p: (f64, f64), max_ring: i64) -> Option<f64> {
    let c = Site::new(libm::round(p.0) as i64, libm::round(p.1) as i64);
    let dist = |s: Site| libm::hypot(s.x as f64 - p.0, s.y as f64 - p.1);
    let mut best = f64::INFINITY;
    let mut k = 0i64;
    while k <= max_ring && (k as f64 - 0.5) < best {
        if k == 0 {
            if state.occupied(c) {
                best = dist(c);
            }
        } else {
            for i in -k..k {
                for s in [
                    Site::new(c.x + i, c.y - k),
                    Site::new(c.x + k, c.y + i),
                    Site::new(c.x - i, c.y + k),
                    Site::new(c.x - k, c.y - i),
                ] {
                    if state.occupied(s) {
                        best = best.min(dist(s));
                    }
                }
            }
        }
        k += 1;
    }
    best.is_finite().then_some(best)
}

/// Lattice points of a closed convex polygon.
pub fn lattice_points(poly: &RationalPolygon) -> Vec<Site> {
    let v = poly.vertices();
    if v.is_empty() {
        return Vec::new();
    }
    let lo_x = v.iter().map(|p| floor_q(p.x)).min().unwrap_or(0);
    let hi_x = v.iter().map(|p| floor_q(p.x)).max().unwrap_or(0);
    let lo_y = v.iter().map(|p| floor_q(p.y)).min().unwrap_or(0);
    let hi_y = v.iter().map(|p| floor_q(p.y)).max().unwrap_or(0);
    Rect::new(lo_x as i64, lo_y as i64, (hi_x - lo_x + 1) as i64, (hi_y - lo_y + 1) as i64)
        .sites()
        .filter(|&s| poly.contains(RationalPoint::from(s)))
        .collect()
}

/// A centered box of radius `2R + 2`, which fills space under any
/// supercritical rule of radius `R`.
pub fn default_seed(rule: &MonotoneRule) -> Vec<Site> {
    let r = 2 * rule.neighborhood().radius() + 2;
    Rect::centered(r).sites().collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CornerLagSample {
    pub t: u64,
    /// Distance from `t·z` to the occupied set, one entry per vertex `z`
    /// of the skeleton's `L`.
    pub per_corner: Vec<f64>,
}

impl CornerLagSample {
    pub fn max(&self) -> f64 {
        self.per_corner.iter().copied().fold(0.0, f64::max)
    }
}

/// Corner lag trace of a random run from `seed`, sampled every `every`
/// steps up to `horizon`.
pub fn corner_lag(
    spec: &PerturbationSpec,
    seed: &[Site],
    horizon: u64,
    every: u64,
    master_seed: u64,
    replica: u64,
) -> Result<Vec<CornerLagSample>> {
    if every == 0 {
        return Err(Error::InvalidInput("sampling interval must be positive".into()));
    }
    let l = wulff_shape(&spec.skeleton())?;
    let corners: Vec<(f64, f64)> = l.to_f64();
    let mut run = RandomRun::new(LatticeState::finite(seed), master_seed, replica);
    let mut out = Vec::new();
    for t in 1..=horizon {
        run.advance(spec)?;
        if t % every == 0 || t == horizon {
            let tf = t as f64;
            let ring = 2 * t as i64 + 16;
            let per_corner = corners
                .iter()
                .map(|&(x, y)| nearest_occupied(&run.state, (tf * x, tf * y), ring).unwrap_or(f64::INFINITY))
                .collect();
            out.push(CornerLagSample { t, per_corner });
        }
    }
    Ok(out)
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleLocation {
    /// Vertex `i` of `L`.
    Corner(usize),
    /// Midpoint of the edge from vertex `i` to vertex `i + 1`.
    EdgeMidpoint(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HoleSpec {
    pub location: HoleLocation,
    /// Number of cells removed: the occupied cells of `t₀·L` closest to the
    /// location, ties broken by `y` then `x`.
    pub cells: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleRepairReport {
    pub repaired: bool,
    /// First step at which the holed run coincides with the hole-free run.
    pub repair_time: Option<u64>,
    pub removed: Vec<Site>,
    /// Cells occupied in the hole-free run but not in the holed run, per
    /// step starting at time 0.
    pub divergence: Vec<u64>,
}

/// Runs `t₀·L ∩ Z²` with and without a hole for up to `horizon` steps.
pub fn hole_repair(rule: &MonotoneRule, t0: u64, hole: HoleSpec, horizon: u64) -> Result<HoleRepairReport> {
    if !rule.is_deterministic() {
        return Err(Error::InvalidInput("hole repair needs a deterministic rule".into()));
    }
    let l = wulff_shape(rule)?;
    let shape = l.scaled(q(t0 as i128));
    let verts = shape.vertices();
    let target = match hole.location {
        HoleLocation::Corner(i) if i < verts.len() => verts[i],
        HoleLocation::EdgeMidpoint(i) if i < verts.len() => {
            let (a, b) = (verts[i], verts[(i + 1) % verts.len()]);
            (a + b).scale(qr(1, 2))
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "hole location {:?} out of range for {} vertices",
                hole.location,
                verts.len()
            )))
        }
    };
    let cells = lattice_points(&shape);
    if hole.cells == 0 || hole.cells >= cells.len() {
        return Err(Error::InvalidInput(format!("cannot remove {} of {} cells", hole.cells, cells.len())));
    }
    let d2 = |s: Site| {
        let d = RationalPoint::from(s) - target;
        d.dot(d)
    };
    let mut ranked = cells.clone();
    ranked.sort_by(|&a, &b| d2(a).cmp(&d2(b)).then(a.y.cmp(&b.y)).then(a.x.cmp(&b.x)));
    let mut removed: Vec<Site> = ranked[..hole.cells].to_vec();
    removed.sort_by_key(|s| (s.y, s.x));
    let holed: Vec<Site> = cells.iter().copied().filter(|s| removed.binary_search_by_key(&(s.y, s.x), |r| (r.y, r.x)).is_err()).collect();

    let mut reference = LatticeState::finite(&cells);
    let mut run = LatticeState::finite(&holed);
    let mut divergence = Vec::with_capacity(horizon as usize + 1);
    let mut repair_time = None;
    for t in 0..=horizon {
        if t > 0 {
            reference = iterate(rule, &reference, 1)?;
            run = iterate(rule, &run, 1)?;
        }
        let a = reference.occupied_sites();
        let missing = a.iter().filter(|&&s| !run.occupied(s)).count() as u64;
        divergence.push(missing);
        if missing == 0 && run.count() == a.len() as u64 {
            repair_time = Some(t);
            break;
        }
    }
    Ok(HoleRepairReport { repaired: repair_time.is_some(), repair_time, removed, divergence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::Neighborhood;

    fn unit_square() -> RationalPolygon {
        RationalPolygon::convex_hull(&[
            RationalPoint::int(1, 1),
            RationalPoint::int(-1, 1),
            RationalPoint::int(-1, -1),
            RationalPoint::int(1, -1),
        ])
    }

    #[test]
    fn hausdorff_examples() {
        let st = LatticeState::finite(&[Site::ORIGIN]);
        let d = hausdorff_to_polygon(&st, &unit_square(), q(10)).unwrap();
        assert!((d - 10.0 * libm::sqrt(2.0)).abs() <= 1.0);

        let l = wulff_shape(&MonotoneRule::box_threshold(1, 3)).unwrap();
        for t in [5, 17, 40] {
            let cells = lattice_points(&l.scaled(q(t)));
            let d = hausdorff_to_polygon(&LatticeState::finite(&cells), &l, q(t)).unwrap();
            assert!(d <= 1.0, "t={t}: {d}");
        }
        assert!(hausdorff_to_polygon(&LatticeState::finite(&[]), &l, q(3)).is_err());
    }

    #[test]
    fn nearest_search_is_exact() {
        let st = LatticeState::finite(&[Site::new(7, -3), Site::new(-2, 9)]);
        for p in [(0.0, 0.0), (3.3, 1.2), (-5.0, 7.5), (20.0, -20.0)] {
            let brute = [(7.0, -3.0), (-2.0, 9.0)]
                .iter()
                .map(|&(x, y): &(f64, f64)| libm::hypot(x - p.0, y - p.1))
                .fold(f64::INFINITY, f64::min);
            assert!((nearest_occupied(&st, p, 100).unwrap() - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn slope() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 3.0 * i as f64 - 1.0)).collect();
        assert!((fit_slope(&pts).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(fit_slope(&pts[..1]), None);
    }

    #[test]
    fn deterministic_lag_is_bounded() {
        let rule = MonotoneRule::box_threshold(1, 3);
        let spec = PerturbationSpec::standard(rule.clone(), 1.0).unwrap();
        let trace = corner_lag(&spec, &default_seed(&rule), 120, 20, 0, 0).unwrap();
        assert!(trace.iter().all(|s| s.max() <= 2.0), "{trace:?}");
    }

    #[test]
    fn von_neumann_hole() {
        let rule = MonotoneRule::threshold(Neighborhood::von_neumann(), 1);
        let r = hole_repair(&rule, 6, HoleSpec { location: HoleLocation::EdgeMidpoint(0), cells: 2 }, 20).unwrap();
        assert!(r.repaired);
        assert_eq!(r.removed.len(), 2);
        assert_eq!(r.divergence[0], 2);
    }
}
