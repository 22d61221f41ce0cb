use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::rational::{q, Q};
use crate::ca::{MonotoneRule, Neighborhood, Pattern, RuleKind, Site};
use crate::error::{Error, Result};

/// A rational direction, stored as a primitive integer vector `v`; the unit
/// vector is `v / |v|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(Site);

impl Direction {
    /// Requires coprime components, not both zero.
    pub fn new(x: i64, y: i64) -> Result<Self> {
        let v = Site::new(x, y);
        if v.is_zero() || v.primitive() != v {
            return Err(Error::InvalidInput(format!(
                "direction ({x}, {y}) must be a primitive nonzero vector"
            )));
        }
        Ok(Direction(v))
    }

    /// Divides out the gcd of a nonzero vector.
    pub fn from_vector(v: Site) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::InvalidInput("zero direction".into()));
        }
        Ok(Direction(v.primitive()))
    }

    pub fn v(self) -> Site {
        self.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    pub fn unit(self) -> (f64, f64) {
        let n = self.norm();
        (self.0.x as f64 / n, self.0.y as f64 / n)
    }
}

/// Result of [`speed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Speed {
    /// `w̃ = w(u) |v|`, an integer because all cut depths are.
    pub scaled: i64,
    /// Neighborhood points on the boundary of the attaining cut.
    pub attaining: Vec<Site>,
    /// Set when no cut at positive depth is sufficient.
    pub subcritical: bool,
}

impl Speed {
    pub fn as_q(&self) -> Q {
        q(self.scaled as i128)
    }

    /// `w(u)` in cells per step along the unit normal.
    pub fn unit_speed(&self, v: Direction) -> f64 {
        self.scaled as f64 / v.norm()
    }
}

/// Scaled half-space speed `w̃(v) = max{h : π({x ∈ N : <x, v> <= -h}) = 1}`,
/// the maximum taken over depths `h = -<x, v>`, `x ∈ N`.
///
/// Table rules are evaluated through their skeleton. Solidification makes
/// depth 0 always sufficient, so `w̃ >= 0`; zero is flagged as subcritical.
pub fn speed(rule: &MonotoneRule, v: Direction) -> Speed {
    speed_vec(rule, v.v())
}

/// [`speed`] for an arbitrary nonzero integer vector (not necessarily
/// primitive); the result scales linearly with `v`.
pub fn speed_vec(rule: &MonotoneRule, v: Site) -> Speed {
    let nb = rule.neighborhood();
    let mut proj: Vec<(i64, usize)> = nb
        .offsets()
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (s.dot(v), i))
        .collect();
    proj.sort_unstable();
    let mut pattern = Pattern::EMPTY;
    let mut count = 0usize;
    let mut i = 0;
    while i < proj.len() && proj[i].0 < 0 {
        let level = proj[i].0;
        let start = i;
        while i < proj.len() && proj[i].0 == level {
            if rule.needs_pattern() {
                pattern = pattern.with(proj[i].1);
            }
            count += 1;
            i += 1;
        }
        if rule.skeleton_fires(pattern, count, false) {
            return Speed {
                scaled: -level,
                attaining: proj[start..i].iter().map(|&(_, j)| nb.offsets()[j]).collect(),
                subcritical: false,
            };
        }
    }
    Speed { scaled: 0, attaining: vec![Site::ORIGIN], subcritical: true }
}

/// Angular order of nonzero integer vectors in `[0, 2π)`.
pub fn angle_cmp(a: Site, b: Site) -> Ordering {
    let half = |p: Site| p.y < 0 || (p.y == 0 && p.x < 0);
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Primitive perpendiculars of all nonzero differences of points of `N`
/// (which contains the origin), both orientations, angularly sorted from
/// `(1, 0)`.
pub fn critical_directions(mask: &Neighborhood) -> Vec<Direction> {
    let pts = mask.offsets();
    let mut diffs: Vec<Site> = Vec::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let d = (a - b).primitive();
            // one representative per line direction
            let d = if d.y < 0 || (d.y == 0 && d.x < 0) { -d } else { d };
            diffs.push(d);
        }
    }
    diffs.sort_unstable();
    diffs.dedup();
    let mut dirs: Vec<Site> = diffs.iter().flat_map(|d| [d.perp(), -d.perp()]).collect();
    dirs.sort_by(|a, b| angle_cmp(*a, *b));
    dirs.dedup();
    dirs.into_iter().map(Direction).collect()
}

/// Critical directions plus the four axis directions, so that consecutive
/// directions are less than a half turn apart.
pub(crate) fn sweep_directions(mask: &Neighborhood) -> Vec<Site> {
    let mut dirs: Vec<Site> = critical_directions(mask).into_iter().map(|d| d.v()).collect();
    dirs.extend([Site::new(1, 0), Site::new(0, 1), Site::new(-1, 0), Site::new(0, -1)]);
    dirs.sort_by(|a, b| angle_cmp(*a, *b));
    dirs.dedup();
    dirs
}

/// Sorted projections of a threshold neighborhood onto a fixed list of
/// directions, shared by every threshold.
#[derive(Clone, Debug)]
pub(crate) struct ProjectionTable {
    /// `dirs[k]` with `proj[k]` sorted ascending, origin excluded.
    pub dirs: Vec<Site>,
    pub proj: Vec<Vec<(i64, Site)>>,
}

impl ProjectionTable {
    pub fn new(nb: &Neighborhood, dirs: Vec<Site>) -> Self {
        let proj = dirs
            .iter()
            .map(|&v| {
                let mut p: Vec<(i64, Site)> = nb.nonzero().map(|s| (s.dot(v), s)).collect();
                p.sort_unstable();
                p
            })
            .collect();
        ProjectionTable { dirs, proj }
    }

    /// `w̃` of threshold `theta` at direction `k`, with one attaining point.
    pub fn threshold_speed(&self, k: usize, theta: u32) -> (i64, Site) {
        let p = &self.proj[k];
        if theta == 0 {
            return (i64::MAX, Site::ORIGIN);
        }
        match p.get(theta as usize - 1) {
            Some(&(s, x)) if s < 0 => (-s, x),
            _ => (0, Site::ORIGIN),
        }
    }
}

/// Threshold of a totalistic rule.
pub(crate) fn threshold_of(rule: &MonotoneRule) -> Option<u32> {
    match rule.kind() {
        RuleKind::Threshold(t) => Some(*t),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    #[test]
    fn directions_are_primitive() {
        assert!(Direction::new(2, 4).is_err());
        assert!(Direction::new(0, 0).is_err());
        assert_eq!(Direction::from_vector(Site::new(2, 4)).unwrap().v(), Site::new(1, 2));
    }

    #[test]
    fn moore_speeds() {
        let t3 = MonotoneRule::box_threshold(1, 3);
        let s = speed(&t3, dir(1, 2));
        assert_eq!(s.scaled, 1);
        assert_eq!(s.attaining, vec![Site::new(1, -1), Site::new(-1, 0)]);
        assert_eq!(speed(&MonotoneRule::box_threshold(1, 2), dir(1, 1)).scaled, 1);
        assert_eq!(speed(&MonotoneRule::box_threshold(1, 1), dir(1, 0)).scaled, 1);
        assert_eq!(speed(&MonotoneRule::box_threshold(1, 1), dir(1, 1)).scaled, 2);
        let sub = speed(&MonotoneRule::box_threshold(1, 4), dir(0, 1));
        assert!(sub.subcritical);
        assert_eq!(sub.scaled, 0);
    }

    #[test]
    fn critical_direction_sets() {
        let vn = critical_directions(&Neighborhood::von_neumann());
        for (x, y) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            assert!(vn.contains(&dir(x, y)) && vn.contains(&dir(-x, -y)));
        }
        assert!(critical_directions(&Neighborhood::new(vec![Site::ORIGIN]).unwrap()).is_empty());
        let moore = critical_directions(&Neighborhood::moore());
        assert_eq!(moore.len(), 16);
        for (x, y) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2)] {
            assert!(moore.contains(&dir(x, y)) && moore.contains(&dir(-x, -y)));
        }
        let sorted = moore.windows(2).all(|w| angle_cmp(w[0].v(), w[1].v()) == Ordering::Less);
        assert!(sorted);
    }

    #[test]
    fn projection_table_matches_direct_speed() {
        let nb = Neighborhood::box_range(2);
        let dirs = sweep_directions(&nb);
        let table = ProjectionTable::new(&nb, dirs.clone());
        for theta in 1..=12 {
            let rule = MonotoneRule::box_threshold(2, theta);
            for (k, &v) in dirs.iter().enumerate() {
                assert_eq!(table.threshold_speed(k, theta).0, speed_vec(&rule, v).scaled);
            }
        }
    }
}
