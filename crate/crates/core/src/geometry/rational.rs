use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::ca::Site;

/// Exact rational scalar.
pub type Q = Ratio<i128>;

#[inline]
pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

#[inline]
pub fn qr(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// `⌊r⌋` as an integer.
pub fn floor_q(r: Q) -> i128 {
    r.numer().div_floor(r.denom())
}

pub fn to_f64(r: Q) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A point with exact rational coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Q,
    pub y: Q,
}

impl RationalPoint {
    pub const ORIGIN: RationalPoint =
        RationalPoint { x: Ratio::new_raw(0, 1), y: Ratio::new_raw(0, 1) };

    pub fn new(x: Q, y: Q) -> Self {
        RationalPoint { x, y }
    }

    pub fn int(x: i128, y: i128) -> Self {
        RationalPoint { x: q(x), y: q(y) }
    }

    pub fn ratio(xn: i128, xd: i128, yn: i128, yd: i128) -> Self {
        RationalPoint { x: qr(xn, xd), y: qr(yn, yd) }
    }

    /// `v / s` for an integer vector.
    pub fn scaled_site(v: Site, s: i128) -> Self {
        RationalPoint { x: qr(v.x as i128, s), y: qr(v.y as i128, s) }
    }

    pub fn dot(self, o: RationalPoint) -> Q {
        self.x * o.x + self.y * o.y
    }

    pub fn dot_site(self, s: Site) -> Q {
        self.x * q(s.x as i128) + self.y * q(s.y as i128)
    }

    pub fn cross(self, o: RationalPoint) -> Q {
        self.x * o.y - self.y * o.x
    }

    pub fn scale(self, k: Q) -> Self {
        RationalPoint { x: self.x * k, y: self.y * k }
    }

    pub fn is_origin(self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(self) -> (f64, f64) {
        (to_f64(self.x), to_f64(self.y))
    }
}

impl From<Site> for RationalPoint {
    fn from(s: Site) -> Self {
        RationalPoint::int(s.x as i128, s.y as i128)
    }
}

impl Add for RationalPoint {
    type Output = RationalPoint;
    fn add(self, o: RationalPoint) -> RationalPoint {
        RationalPoint { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for RationalPoint {
    type Output = RationalPoint;
    fn sub(self, o: RationalPoint) -> RationalPoint {
        RationalPoint { x: self.x - o.x, y: self.y - o.y }
    }
}

impl Neg for RationalPoint {
    type Output = RationalPoint;
    fn neg(self) -> RationalPoint {
        RationalPoint { x: -self.x, y: -self.y }
    }
}

impl Mul<Q> for RationalPoint {
    type Output = RationalPoint;
    fn mul(self, k: Q) -> RationalPoint {
        self.scale(k)
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orientation of `(a, b, c)`: positive for a left turn.
pub fn orient(a: RationalPoint, b: RationalPoint, c: RationalPoint) -> Q {
    (b - a).cross(c - a)
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: Q) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
