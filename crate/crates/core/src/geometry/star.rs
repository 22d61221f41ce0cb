use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::polygon::RationalPolygon;
use super::rational::{orient, RationalPoint};
use super::speed::{speed_vec, sweep_directions, threshold_of, ProjectionTable};
use crate::ca::{MonotoneRule, Site};
use crate::error::{Error, Result};

/// Exact boundary of the star-shaped set `K_{1/w}`.
///
/// Vertices are counter-clockwise starting from the smallest angle in
/// `[0, 2π)`. Edge `i` runs from vertex `i` to vertex `i + 1` (cyclically)
/// and lies on the K-line `{y : <y, -x> = 1}` of `duals[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarBoundary {
    vertices: Vec<RationalPoint>,
    duals: Vec<Site>,
}

impl StarBoundary {
    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn duals(&self) -> &[Site] {
        &self.duals
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// `(start, end, dual)` for every edge.
    pub fn edges(&self) -> impl Iterator<Item = (RationalPoint, RationalPoint, Site)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n], self.duals[i]))
    }

    pub fn convex_hull(&self) -> RationalPolygon {
        RationalPolygon::convex_hull(&self.vertices)
    }

    /// The boundary as a (generally non-convex) polygon.
    pub fn as_polygon(&self) -> RationalPolygon {
        RationalPolygon::from_vertices(self.vertices.clone())
    }

    pub fn is_convex(&self) -> bool {
        self.convex_hull().len() == self.vertices.len()
    }

    /// Whether every edge lies on the K-line of its tag.
    pub fn edges_on_dual_lines(&self) -> bool {
        self.edges().all(|(a, b, x)| {
            let nx = -RationalPoint::from(x);
            a.dot(nx).is_one() && b.dot(nx).is_one()
        })
    }

    /// Closed under `y -> -y`.
    pub fn is_point_symmetric(&self) -> bool {
        let set: BTreeSet<RationalPoint> = self.vertices.iter().copied().collect();
        self.vertices.iter().all(|&v| set.contains(&-v))
    }
}

/// Exact `K_{1/w}` of a rule (table rules through their skeleton).
///
/// The boundary point in direction `v` is `v / w̃(v)`. Between consecutive
/// critical directions the attaining neighborhood point is constant, so the
/// boundary there is a piece of one K-line; it is identified by evaluating the
/// speed at the sum of the two bounding directions. Vertices sit at critical
/// directions where that point changes.
pub fn k_star(rule: &MonotoneRule) -> Result<StarBoundary> {
    let dirs = sweep_directions(rule.neighborhood());
    if let Some(theta) = threshold_of(rule) {
        let table = ProjectionTable::new(rule.neighborhood(), interleave(&dirs));
        return star_from_table(&table, theta);
    }
    let n = dirs.len();
    let mut crit = Vec::with_capacity(n);
    let mut gap_dual = Vec::with_capacity(n);
    for i in 0..n {
        let v = dirs[i];
        let w = speed_vec(rule, v).scaled;
        if w <= 0 {
            return Err(Error::NotSupercritical { direction: v });
        }
        crit.push((v, w));
        let g = v + dirs[(i + 1) % n];
        let s = speed_vec(rule, g);
        if s.scaled <= 0 {
            return Err(Error::NotSupercritical { direction: g.primitive() });
        }
        debug_assert_eq!(s.attaining.len(), 1);
        gap_dual.push(s.attaining[0]);
    }
    Ok(assemble(&crit, &gap_dual))
}

/// Critical directions with the gap witnesses in between:
/// `[d0, d0 + d1, d1, d1 + d2, ...]`.
pub(crate) fn interleave(dirs: &[Site]) -> Vec<Site> {
    let n = dirs.len();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        out.push(dirs[i]);
        out.push(dirs[i] + dirs[(i + 1) % n]);
    }
    out
}

/// Star of threshold `theta` from an interleaved projection table.
pub(crate) fn star_from_table(table: &ProjectionTable, theta: u32) -> Result<StarBoundary> {
    let n = table.dirs.len() / 2;
    let mut crit = Vec::with_capacity(n);
    let mut gap_dual = Vec::with_capacity(n);
    for i in 0..n {
        let (w, _) = table.threshold_speed(2 * i, theta);
        if w <= 0 {
            return Err(Error::NotSupercritical { direction: table.dirs[2 * i] });
        }
        crit.push((table.dirs[2 * i], w));
        let (wg, x) = table.threshold_speed(2 * i + 1, theta);
        if wg <= 0 {
            return Err(Error::NotSupercritical { direction: table.dirs[2 * i + 1].primitive() });
        }
        gap_dual.push(x);
    }
    Ok(assemble(&crit, &gap_dual))
}

fn assemble(crit: &[(Site, i64)], gap_dual: &[Site]) -> StarBoundary {
    let n = crit.len();
    let mut vertices = Vec::new();
    let mut duals = Vec::new();
    for i in 0..n {
        let before = gap_dual[(i + n - 1) % n];
        let after = gap_dual[i];
        if before != after {
            let (v, w) = crit[i];
            let p = RationalPoint::scaled_site(v, w as i128);
            debug_assert!(p.dot_site(-before).is_one() && p.dot_site(-after).is_one());
            vertices.push(p);
            duals.push(after);
        }
    }
    StarBoundary { vertices, duals }
}

/// One maximal connected piece of `∂K ∩ ∂co(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KComponent {
    Point(RationalPoint),
    /// Consecutive star edges on the hull boundary. `duals[i]` tags the edge
    /// from `vertices[i]` to the next vertex; a closed path wraps around.
    Path { vertices: Vec<RationalPoint>, duals: Vec<Site>, closed: bool },
}

/// `∂K′ = ∂K ∩ ∂co(K)` for a star boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPrimeSet {
    pub components: Vec<KComponent>,
    /// Star vertices on the hull boundary that are not hull vertices.
    pub(crate) interior_hull_points: usize,
    /// Star vertices on the hull boundary, in angular order.
    pub(crate) contact: Vec<RationalPoint>,
}

impl KPrimeSet {
    pub fn isolated_points(&self) -> Vec<RationalPoint> {
        self.components
            .iter()
            .filter_map(|c| match c {
                KComponent::Point(p) => Some(*p),
                _ => None,
            })
            .collect()
    }

    /// Every edge of `∂K′` as `(start, end, dual)`.
    pub fn segments(&self) -> Vec<(RationalPoint, RationalPoint, Site)> {
        let mut out = Vec::new();
        for c in &self.components {
            if let KComponent::Path { vertices, duals, closed } = c {
                let m = vertices.len();
                let edges = if *closed { m } else { m - 1 };
                for i in 0..edges {
                    out.push((vertices[i], vertices[(i + 1) % m], duals[i]));
                }
            }
        }
        out
    }

    pub fn has_segment(&self) -> bool {
        self.components.iter().any(|c| matches!(c, KComponent::Path { .. }))
    }

    /// All star vertices lying on the hull boundary.
    pub fn contact_points(&self) -> &[RationalPoint] {
        &self.contact
    }
}

pub fn k_prime(star: &StarBoundary) -> KPrimeSet {
    let verts = star.vertices();
    let n = verts.len();
    let hull: BTreeSet<RationalPoint> = star.convex_hull().vertices().iter().copied().collect();
    let is_hull: Vec<bool> = verts.iter().map(|v| hull.contains(v)).collect();
    let mut on = is_hull.clone();
    let mut interior_hull_points = 0;
    if let Some(first) = is_hull.iter().position(|&h| h) {
        // walk from hull vertex to hull vertex; in between, a star vertex is
        // on the hull boundary iff it is collinear with the two hull vertices
        let mut a = first;
        loop {
            let mut b = (a + 1) % n;
            while !is_hull[b] {
                b = (b + 1) % n;
            }
            let mut j = (a + 1) % n;
            while j != b {
                if orient(verts[a], verts[j], verts[b]).is_zero() {
                    on[j] = true;
                    interior_hull_points += 1;
                }
                j = (j + 1) % n;
            }
            a = b;
            if a == first {
                break;
            }
        }
    }
    let edge_on: Vec<bool> = (0..n).map(|i| on[i] && on[(i + 1) % n]).collect();
    let contact = (0..n).filter(|&i| on[i]).map(|i| verts[i]).collect();
    let mut components = Vec::new();
    if n > 0 && edge_on.iter().all(|&e| e) {
        components.push(KComponent::Path {
            vertices: verts.to_vec(),
            duals: star.duals().to_vec(),
            closed: true,
        });
        return KPrimeSet { components, interior_hull_points, contact };
    }
    // start right after an edge that is off the hull
    let start = (edge_on.iter().position(|&e| !e).unwrap_or(0) + 1) % n.max(1);
    let mut i = 0;
    while i < n {
        let j = (start + i) % n;
        if !on[j] {
            i += 1;
            continue;
        }
        if !edge_on[j] {
            components.push(KComponent::Point(verts[j]));
            i += 1;
            continue;
        }
        let mut vertices = alloc::vec![verts[j]];
        let mut duals = Vec::new();
        let mut k = j;
        while edge_on[k] {
            duals.push(star.duals()[k]);
            k = (k + 1) % n;
            vertices.push(verts[k]);
            i += 1;
        }
        i += 1;
        components.push(KComponent::Path { vertices, duals, closed: false });
    }
    KPrimeSet { components, interior_hull_points, contact }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// `∂K′` is a set of isolated points, no three collinear.
    Case1,
    /// Isolated points, some three collinear.
    Case2,
    /// `∂K′` contains a segment.
    Case3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseLabel {
    pub case: Case,
    pub supercritical: bool,
    /// `K_{1/w}` is convex.
    pub quasi_additive: bool,
}

/// Case of an exact star. Three points of a convex curve are collinear only
/// if they share a hull edge, so Case 2 reduces to a contact point strictly
/// inside a hull edge.
pub fn classify_star(star: &StarBoundary) -> CaseLabel {
    let kp = k_prime(star);
    let case = if kp.has_segment() {
        Case::Case3
    } else if kp.interior_hull_points > 0 {
        Case::Case2
    } else {
        Case::Case1
    };
    CaseLabel { case, supercritical: true, quasi_additive: star.is_convex() }
}

/// Case classification of a rule; table rules use their skeleton.
pub fn classify(rule: &MonotoneRule) -> Result<CaseLabel> {
    Ok(classify_star(&k_star(rule)?))
}

/// The asymptotic shape `L = (co K_{1/w})*`.
pub fn wulff_shape(rule: &MonotoneRule) -> Result<RationalPolygon> {
    k_star(rule)?.convex_hull().polar()
}

/// `co(N)` as a polygon.
pub fn hull_of_neighborhood(rule: &MonotoneRule) -> RationalPolygon {
    let pts: Vec<RationalPoint> =
        rule.neighborhood().offsets().iter().map(|&s| RationalPoint::from(s)).collect();
    RationalPolygon::convex_hull(&pts)
}

/// `v` scaled so that it lies on `∂K`, i.e. `v / w̃(v)`.
pub fn boundary_point(rule: &MonotoneRule, v: Site) -> Result<RationalPoint> {
    let w = speed_vec(rule, v).scaled;
    if w <= 0 {
        return Err(Error::NotSupercritical { direction: v.primitive() });
    }
    Ok(RationalPoint::scaled_site(v, w as i128))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::Neighborhood;
    use alloc::vec;

    fn p(x: i128, y: i128) -> RationalPoint {
        RationalPoint::int(x, y)
    }

    fn sorted(mut v: Vec<RationalPoint>) -> Vec<RationalPoint> {
        v.sort();
        v
    }

    #[test]
    fn moore_three_star() {
        let star = k_star(&MonotoneRule::box_threshold(1, 3)).unwrap();
        assert_eq!(star.vertex_count(), 16);
        assert!(star.edges_on_dual_lines());
        assert!(star.is_point_symmetric());
        let v = star.vertices();
        let i = v.iter().position(|&x| x == p(1, 1)).unwrap();
        assert_eq!(v[(i + 1) % 16], p(1, 2));
        assert_eq!(v[(i + 2) % 16], p(0, 1));
        let kp = k_prime(&star);
        assert_eq!(kp.isolated_points().len(), 8);
        assert!(!kp.has_segment());
        let label = classify_star(&star);
        assert_eq!(label.case, Case::Case1);
        assert!(label.supercritical && !label.quasi_additive);
    }

    #[test]
    fn moore_two_is_the_square() {
        let rule = MonotoneRule::box_threshold(1, 2);
        let star = k_star(&rule).unwrap();
        assert_eq!(sorted(star.vertices().to_vec()), vec![p(-1, -1), p(-1, 1), p(1, -1), p(1, 1)]);
        let label = classify(&rule).unwrap();
        assert!(label.quasi_additive);
        assert_eq!(label.case, Case::Case3);
        let l = wulff_shape(&rule).unwrap();
        assert_eq!(sorted(l.vertices().to_vec()), vec![p(-1, 0), p(0, -1), p(0, 1), p(1, 0)]);
    }

    #[test]
    fn additive_rules_give_the_polar_of_the_hull() {
        for nb in [Neighborhood::moore(), Neighborhood::von_neumann(), Neighborhood::box_range(2)] {
            let rule = MonotoneRule::threshold(nb, 1);
            let hull = hull_of_neighborhood(&rule);
            assert_eq!(wulff_shape(&rule).unwrap(), hull);
            assert_eq!(k_star(&rule).unwrap().convex_hull(), hull.polar().unwrap());
        }
    }

    #[test]
    fn range_two_cases() {
        let case = |t| classify(&MonotoneRule::box_threshold(2, t)).unwrap().case;
        assert_eq!(case(7), Case::Case2);
        assert_eq!(case(8), Case::Case3);
        assert_eq!(case(4), Case::Case1);
        assert!(matches!(
            classify(&MonotoneRule::box_threshold(2, 11)),
            Err(Error::NotSupercritical { .. })
        ));
    }

    #[test]
    fn antichain_and_threshold_routes_agree() {
        // Moore θ = 3 written as all 3-subsets
        let nb = Neighborhood::moore();
        let others: Vec<Site> = nb.nonzero().collect();
        let mut sets = Vec::new();
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    sets.push(vec![others[a], others[b], others[c]]);
                }
            }
        }
        let anti = MonotoneRule::antichain(nb, &sets).unwrap();
        assert_eq!(k_star(&anti).unwrap(), k_star(&MonotoneRule::box_threshold(1, 3)).unwrap());
    }
}
