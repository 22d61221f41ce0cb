use alloc::vec::Vec;

use super::rational::{q, Q};
use crate::ca::{Neighborhood, Site};
use crate::error::{Error, Result};

/// `|L⁻(ℓ)|` for the line through `x` with direction `dir`: the number of
/// points of `N` on the line or strictly beyond it, seen from the origin.
pub fn lambda_of_line(nb: &Neighborhood, x: Site, dir: Site) -> Result<usize> {
    let (n, c) = oriented_normal(x, dir)?;
    Ok(nb.offsets().iter().filter(|y| y.dot(n) >= c).count())
}

/// Normal pointing away from the origin and the line's level along it.
fn oriented_normal(x: Site, dir: Site) -> Result<(Site, i64)> {
    let n = dir.perp();
    let c = x.dot(n);
    match c {
        0 => Err(Error::LineThroughOrigin),
        c if c < 0 => Ok((-n, -c)),
        c => Ok((n, c)),
    }
}

/// Canonical representative of a line direction, in the upper half-plane.
fn upper(d: Site) -> Site {
    let d = d.primitive();
    if d.y < 0 || (d.y == 0 && d.x < 0) {
        -d
    } else {
        d
    }
}

/// Line directions through `x` to be tested: every direction through `x` and
/// another point of `N ∪ {0}` (closed cuts, skipping the one through the
/// origin), and one generic direction strictly inside each angular gap.
fn candidate_lines(nb: &Neighborhood, x: Site) -> Vec<(Site, bool)> {
    let mut crit: Vec<Site> = nb
        .offsets()
        .iter()
        .filter(|&&y| y != x)
        .map(|&y| upper(y - x))
        .collect();
    crit.sort_by(|a, b| super::speed::angle_cmp(*a, *b));
    crit.dedup();
    let m = crit.len();
    let mut out = Vec::with_capacity(2 * m);
    for i in 0..m {
        let next = if i + 1 < m { crit[i + 1] } else { -crit[0] };
        out.push((crit[i], true));
        out.push((crit[i] + next, false));
    }
    out
}

/// `Λ*(x) = min_φ Λ(x, φ)` over lines through `x` avoiding the origin, for
/// the range-`rho` box.
pub fn lambda_star(x: Site, rho: i64) -> usize {
    lambda_star_in(&Neighborhood::box_range(rho), x)
}

/// [`lambda_star`] for an arbitrary neighborhood containing `x != 0`.
pub fn lambda_star_in(nb: &Neighborhood, x: Site) -> usize {
    candidate_lines(nb, x)
        .into_iter()
        .filter_map(|(d, _)| lambda_of_line(nb, x, d).ok())
        .min()
        .expect("some line through x avoids the origin")
}

/// Minimum of `Λ(x, φ)` over the lines through `x` that leave the square
/// `[-rho, rho]²` through two neighboring sides. A corner belongs to both of
/// its sides, and a line touching the square only at a corner counts as
/// neighboring.
pub fn lambda_star_neighboring(x: Site, rho: i64) -> Option<usize> {
    let nb = Neighborhood::box_range(rho);
    candidate_lines(&nb, x)
        .into_iter()
        .filter(|&(d, _)| exits_neighboring(x, d, rho))
        .filter_map(|(d, _)| lambda_of_line(&nb, x, d).ok())
        .min()
}

const LEFT: u8 = 1;
const RIGHT: u8 = 2;
const BOTTOM: u8 = 4;
const TOP: u8 = 8;

fn exits_neighboring(x: Site, d: Site, rho: i64) -> bool {
    let r = q(rho as i128);
    let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
    for (xc, dc) in [(x.x, d.x), (x.y, d.y)] {
        if dc == 0 {
            continue;
        }
        let a = (-r - q(xc as i128)) / q(dc as i128);
        let b = (r - q(xc as i128)) / q(dc as i128);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        lo = Some(lo.map_or(a, |l: Q| l.max(a)));
        hi = Some(hi.map_or(b, |h: Q| h.min(b)));
    }
    let (lo, hi) = (lo.expect("nonzero direction"), hi.expect("nonzero direction"));
    if lo == hi {
        return true;
    }
    let sides = |s: Q| {
        let px = q(x.x as i128) + s * q(d.x as i128);
        let py = q(x.y as i128) + s * q(d.y as i128);
        let mut m = 0;
        if px == -r {
            m |= LEFT;
        }
        if px == r {
            m |= RIGHT;
        }
        if py == -r {
            m |= BOTTOM;
        }
        if py == r {
            m |= TOP;
        }
        m
    };
    let (a, b) = (sides(lo), sides(hi));
    let horiz = |m: u8| m & (LEFT | RIGHT) != 0;
    let vert = |m: u8| m & (BOTTOM | TOP) != 0;
    (horiz(a) && vert(b)) || (vert(a) && horiz(b))
}

/// `{Λ*(x) : x ∈ N \ {0}}` for the range-`rho` box, evaluated on one octant
/// (the box is invariant under the eight lattice symmetries).
pub fn lambda_star_set(rho: i64) -> alloc::collections::BTreeSet<usize> {
    let nb = Neighborhood::box_range(rho);
    octant(rho).map(|x| lambda_star_in(&nb, x)).collect()
}

/// Representatives `(-a, -b)` with `0 <= a <= b <= rho`, excluding the origin.
pub(crate) fn octant(rho: i64) -> impl Iterator<Item = Site> {
    (0..=rho).flat_map(move |b| (0..=b).map(move |a| Site::new(-a, -b))).filter(|s| !s.is_zero())
}

/// `|{mn : 1 <= m, n <= n_max}|` by direct enumeration.
pub fn distinct_products(n_max: u64) -> u64 {
    let mut v: Vec<u64> = (1..=n_max).flat_map(|m| (m..=n_max).map(move |n| m * n)).collect();
    v.sort_unstable();
    v.dedup();
    v.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_counts() {
        let b2 = Neighborhood::box_range(2);
        assert_eq!(lambda_of_line(&b2, Site::new(-2, -2), Site::new(1, -1)).unwrap(), 1);
        let b1 = Neighborhood::moore();
        assert_eq!(lambda_of_line(&b1, Site::new(0, -1), Site::new(1, 0)).unwrap(), 3);
        assert_eq!(
            lambda_of_line(&b1, Site::new(1, 1), Site::new(1, 1)),
            Err(Error::LineThroughOrigin)
        );
        for x in b2.nonzero() {
            let direct = b2.offsets().iter().filter(|y| y.dot(x) >= x.dot(x)).count();
            assert_eq!(lambda_of_line(&b2, x, x.perp()).unwrap(), direct);
        }
    }

    #[test]
    fn corner_and_edge_values() {
        assert_eq!(lambda_star(Site::new(-2, -2), 2), 1);
        assert_eq!(lambda_star(Site::new(0, -1), 1), 2);
        for rho in 1..=6 {
            for theta in 1..=rho {
                assert_eq!(lambda_star(Site::new(-rho + theta - 1, -rho), rho), theta as usize);
            }
        }
    }

    #[test]
    fn range_two_set() {
        let s: Vec<usize> = lambda_star_set(2).into_iter().filter(|&t| t <= 10).collect();
        assert_eq!(s, [1, 2, 3, 5, 8]);
    }

    #[test]
    fn neighboring_sides_route_agrees() {
        for rho in 1..=5 {
            for x in Neighborhood::box_range(rho).nonzero() {
                assert_eq!(lambda_star_neighboring(x, rho), Some(lambda_star(x, rho)), "x={x:?}");
            }
        }
    }

    #[test]
    fn products() {
        assert_eq!(distinct_products(1), 1);
        assert_eq!(distinct_products(2), 3);
        assert_eq!(distinct_products(4), 9);
    }
}
