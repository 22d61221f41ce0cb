use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::rational::{orient, Q, RationalPoint};
use crate::error::{Error, Result};

/// Ordered vertex list with exact coordinates.
///
/// Polygons built by [`RationalPolygon::convex_hull`] and
/// [`RationalPolygon::polar`] are strictly convex, counter-clockwise, and start
/// at the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<RationalPoint>,
}

impl RationalPolygon {
    /// Wraps a vertex list as given.
    pub fn from_vertices(vertices: Vec<RationalPoint>) -> Self {
        RationalPolygon { vertices }
    }

    /// Strictly convex hull (collinear boundary points dropped), by the
    /// monotone chain.
    pub fn convex_hull(points: &[RationalPoint]) -> Self {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return RationalPolygon { vertices: pts };
        }
        let mut hull: Vec<RationalPoint> = Vec::with_capacity(pts.len() + 1);
        for pass in 0..2 {
            let start = hull.len();
            let iter: &mut dyn Iterator<Item = &RationalPoint> =
                if pass == 0 { &mut pts.iter() } else { &mut pts.iter().rev() };
            for &p in iter {
                while hull.len() >= start + 2
                    && !orient(hull[hull.len() - 2], hull[hull.len() - 1], p).is_positive()
                {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        RationalPolygon { vertices: hull }
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs, closing back to the first vertex.
    pub fn edges(&self) -> impl Iterator<Item = (RationalPoint, RationalPoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Rotates the vertex list to start at its lexicographically smallest
    /// vertex.
    pub fn normalized(mut self) -> Self {
        if let Some((i, _)) = self.vertices.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
            self.vertices.rotate_left(i);
        }
        self
    }

    pub fn scaled(&self, k: Q) -> Self {
        RationalPolygon { vertices: self.vertices.iter().map(|v| v.scale(k)).collect() }
    }

    pub fn translated(&self, by: RationalPoint) -> Self {
        RationalPolygon { vertices: self.vertices.iter().map(|&v| v + by).collect() }
    }

    /// Whether the origin is strictly inside a counter-clockwise convex
    /// polygon.
    pub fn origin_interior(&self) -> bool {
        self.len() >= 3 && self.edges().all(|(a, b)| a.cross(b).is_positive())
    }

    /// Closed membership test for counter-clockwise convex polygons.
    pub fn contains(&self, p: RationalPoint) -> bool {
        self.len() >= 3 && self.edges().all(|(a, b)| !orient(a, b, p).is_negative())
    }

    /// Polar dual `{y : <x, y> <= 1 for all x}` of a counter-clockwise convex
    /// polygon containing the origin strictly inside.
    pub fn polar(&self) -> Result<RationalPolygon> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let verts = self
            .edges()
            .map(|(a, b)| {
                let det = a.cross(b);
                RationalPoint::new((b.y - a.y) / det, (a.x - b.x) / det)
            })
            .collect();
        Ok(RationalPolygon { vertices: verts }.normalized())
    }

    pub fn area(&self) -> Q {
        let s: Q = self.edges().map(|(a, b)| a.cross(b)).fold(Q::zero(), |acc, c| acc + c);
        s / Q::from_integer(2)
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.vertices.iter().map(|v| v.to_f64()).collect()
    }
}

/// Euclidean distance from a point to a closed convex polygon (zero inside).
pub fn distance_to_convex(poly: &[(f64, f64)], p: (f64, f64)) -> f64 {
    let n = poly.len();
    if n == 0 {
        return f64::INFINITY;
    }
    if n >= 3 {
        let inside = (0..n).all(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= -1e-12
        });
        if inside {
            return 0.0;
        }
    }
    (0..n)
        .map(|i| segment_distance(poly[i], poly[(i + 1) % n], p))
        .fold(f64::INFINITY, f64::min)
}

pub fn segment_distance(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (a.0 + t * dx - p.0, a.1 + t * dy - p.1);
    libm::sqrt(qx * qx + qy * qy)
}

/// Total order on nonzero rational vectors by angle in `[0, 2π)`.
pub fn angle_cmp(a: RationalPoint, b: RationalPoint) -> Ordering {
    let half = |p: RationalPoint| p.y.is_negative() || (p.y.is_zero() && p.x.is_negative());
    half(a).cmp(&half(b)).then_with(|| Q::zero().cmp(&a.cross(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::qr;
    use alloc::vec;

    fn p(x: i128, y: i128) -> RationalPoint {
        RationalPoint::int(x, y)
    }

    #[test]
    fn square_and_diamond_are_dual() {
        let sq = RationalPolygon::convex_hull(&[p(1, 1), p(-1, 1), p(-1, -1), p(1, -1), p(0, 1)]);
        assert_eq!(sq.len(), 4);
        let d = sq.polar().unwrap();
        let mut got = d.vertices().to_vec();
        got.sort();
        assert_eq!(got, vec![p(-1, 0), p(0, -1), p(0, 1), p(1, 0)]);
        assert_eq!(d.polar().unwrap(), sq);
    }

    #[test]
    fn parallelogram_from_listed_vertices() {
        let pts = [p(0, 1), p(0, -1), p(-1, 1), p(1, -1), p(1, 2), p(-1, -2)];
        let l = RationalPolygon::convex_hull(&pts).polar().unwrap();
        let mut got = l.vertices().to_vec();
        got.sort();
        let mut want = vec![
            p(1, 0),
            p(-1, 0),
            RationalPoint::ratio(-1, 3, 2, 3),
            RationalPoint::ratio(1, 3, -2, 3),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn polar_needs_interior_origin() {
        let off = RationalPolygon::convex_hull(&[p(1, 1), p(2, 1), p(1, 2)]);
        assert_eq!(off.polar(), Err(Error::OriginNotInterior));
        let edge = RationalPolygon::convex_hull(&[p(0, 0), p(2, 0), p(0, 2)]);
        assert_eq!(edge.polar(), Err(Error::OriginNotInterior));
    }

    #[test]
    fn membership_area_distance() {
        let sq = RationalPolygon::convex_hull(&[p(1, 1), p(-1, 1), p(-1, -1), p(1, -1)]);
        assert!(sq.contains(p(1, 0)));
        assert!(sq.contains(RationalPoint::ratio(1, 2, -1, 3)));
        assert!(!sq.contains(RationalPoint::new(qr(3, 2), qr(0, 1))));
        assert_eq!(sq.area(), qr(4, 1));
        let f = sq.to_f64();
        assert_eq!(distance_to_convex(&f, (0.5, 0.5)), 0.0);
        assert!((distance_to_convex(&f, (4.0, 5.0)) - 5.0).abs() < 1e-12);
    }
}
