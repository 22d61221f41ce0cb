use alloc::vec::Vec;

use crate::error::{Error, Result};

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("p = {p} outside [0, 1]")))
    }
}

const SLACK: f64 = 1e-12;

/// `φ(y) = 1 − p − (1 − 2p)y + 2√(p(1−p)y(1−y))` on `[p, 1]`; arguments
/// within `1e-12` of the interval are clamped.
pub fn phi(p: f64, y: f64) -> Result<f64> {
    check_p(p)?;
    if y < p - SLACK || y > 1.0 + SLACK {
        return Err(Error::Domain(alloc::format!("y = {y} outside [{p}, 1]")));
    }
    Ok(phi_unchecked(p, y.clamp(p, 1.0)))
}

/// Evaluated as `(√(py) + √((1−p)(1−y)))²`, which is exact at both ends of
/// the domain; the plain form loses half the digits near `y = 1`.
fn phi_unchecked(p: f64, y: f64) -> f64 {
    let a = libm::sqrt(p * y) + libm::sqrt((1.0 - p) * (1.0 - y));
    a * a
}

/// Height of the top corner of `L_p`.
pub fn y_zero(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(if p >= 0.5 { 1.0 } else { 2.0 * (1.0 - p) / (3.0 - libm::sqrt(8.0 * p)) })
}

/// An `x` bound as a function of `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XBound {
    /// `c0 + c1·y`.
    Affine(f64, f64),
    /// `outer·φ(inner·y) + slope·y`, with `inner = ±1`.
    Phi { outer: f64, inner: f64, slope: f64 },
}

impl XBound {
    fn eval(&self, p: f64, y: f64) -> f64 {
        match *self {
            XBound::Affine(c0, c1) => c0 + c1 * y,
            XBound::Phi { outer, inner, slope } => {
                let arg = (inner * y).clamp(p, 1.0);
                outer * phi_unchecked(p, arg) + slope * y
            }
        }
    }

    fn negated(&self) -> XBound {
        match *self {
            XBound::Affine(c0, c1) => XBound::Affine(-c0, c1),
            XBound::Phi { outer, inner, slope } => XBound::Phi { outer: -outer, inner: -inner, slope },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// `x >= f(y)`.
    Left,
    /// `x <= f(y)`.
    Right,
}

/// A constraint on `x` valid for `y` in `[y_lo, y_hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub y_lo: f64,
    pub y_hi: f64,
    pub bound: Bound,
    pub f: XBound,
}

/// Closed region `{(x, y) : y_min <= y <= y_max, every piece covering y holds}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeCurve {
    pub p: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub pieces: Vec<Piece>,
}

impl ShapeCurve {
    /// `[x_left, x_right]` at height `y`, or `None` if the slice is empty.
    pub fn x_range(&self, y: f64) -> Option<(f64, f64)> {
        if y < self.y_min || y > self.y_max {
            return None;
        }
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for piece in self.pieces.iter().filter(|pc| pc.y_lo <= y && y <= pc.y_hi) {
            let v = piece.f.eval(self.p, y);
            match piece.bound {
                Bound::Left => lo = lo.max(v),
                Bound::Right => hi = hi.min(v),
            }
        }
        (lo <= hi + 1e-12).then_some((lo, hi))
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x_range(y).is_some_and(|(lo, hi)| lo - 1e-12 <= x && x <= hi + 1e-12)
    }

    /// Point reflection `-R`.
    pub fn negated(&self) -> ShapeCurve {
        ShapeCurve {
            p: self.p,
            y_min: -self.y_max,
            y_max: -self.y_min,
            pieces: self
                .pieces
                .iter()
                .map(|pc| Piece {
                    y_lo: -pc.y_hi,
                    y_hi: -pc.y_lo,
                    bound: match pc.bound {
                        Bound::Left => Bound::Right,
                        Bound::Right => Bound::Left,
                    },
                    f: pc.f.negated(),
                })
                .collect(),
        }
    }

    pub fn intersect(&self, other: &ShapeCurve) -> ShapeCurve {
        let mut pieces = self.pieces.clone();
        pieces.extend_from_slice(&other.pieces);
        ShapeCurve { p: self.p, y_min: self.y_min.max(other.y_min), y_max: self.y_max.min(other.y_max), pieces }
    }

    /// `(y, x_left, x_right)` at `n + 1` equally spaced heights of
    /// `[y_lo, y_hi]`, skipping empty slices.
    pub fn sample(&self, y_lo: f64, y_hi: f64, n: usize) -> Vec<(f64, f64, f64)> {
        let n = n.max(1);
        (0..=n)
            .filter_map(|i| {
                let y = y_lo + (y_hi - y_lo) * i as f64 / n as f64;
                self.x_range(y).map(|(a, b)| (y, a, b))
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wedge {
    W1,
    W2,
    W3,
    W4,
}

/// Limit shape of the run started from one of the four wedges.
pub fn wedge_shape(p: f64, which: Wedge) -> Result<ShapeCurve> {
    check_p(p)?;
    let inf = f64::INFINITY;
    let w1 = ShapeCurve {
        p,
        y_min: -inf,
        y_max: 1.0,
        pieces: alloc::vec![
            Piece { y_lo: p, y_hi: 1.0, bound: Bound::Left, f: XBound::Phi { outer: -1.0, inner: 1.0, slope: 0.0 } },
            Piece { y_lo: -inf, y_hi: p, bound: Bound::Left, f: XBound::Affine(-1.0, 0.0) },
        ],
    };
    let w2 = ShapeCurve {
        p,
        y_min: -inf,
        y_max: 1.0,
        pieces: alloc::vec![
            Piece { y_lo: p, y_hi: 1.0, bound: Bound::Right, f: XBound::Phi { outer: 1.0, inner: 1.0, slope: -1.0 } },
            Piece { y_lo: -inf, y_hi: p, bound: Bound::Right, f: XBound::Affine(1.0, -1.0) },
        ],
    };
    Ok(match which {
        Wedge::W1 => w1,
        Wedge::W2 => w2,
        Wedge::W3 => w1.negated(),
        Wedge::W4 => w2.negated(),
    })
}

/// `L_p`, the intersection of the four wedge shapes.
pub fn shape_lp(p: f64) -> Result<ShapeCurve> {
    let mut s = wedge_shape(p, Wedge::W1)?;
    for w in [Wedge::W2, Wedge::W3, Wedge::W4] {
        s = s.intersect(&wedge_shape(p, w)?);
    }
    let y0 = y_zero(p)?;
    s.y_min = -y0;
    s.y_max = y0;
    Ok(s)
}
