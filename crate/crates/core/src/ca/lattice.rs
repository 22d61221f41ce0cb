use core::ops::{Add, Mul, Neg, Sub};

/// A point of `Z²`, used both for cells and for neighborhood offsets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub x: i64,
    pub y: i64,
}

impl Site {
    pub const ORIGIN: Site = Site { x: 0, y: 0 };

    #[inline]
    pub const fn new(x: i64, y: i64) -> Self {
        Site { x, y }
    }

    #[inline]
    pub fn dot(self, other: Site) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn cross(self, other: Site) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// Quarter turn counter-clockwise.
    #[inline]
    pub fn perp(self) -> Site {
        Site::new(-self.y, self.x)
    }

    pub fn chebyshev(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn norm_sq(self) -> i64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sq() as f64)
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Divides out the gcd of the coordinates. The zero vector stays zero.
    pub fn primitive(self) -> Site {
        let g = num_integer::gcd(self.x, self.y);
        if g == 0 {
            self
        } else {
            Site::new(self.x / g, self.y / g)
        }
    }
}

impl Add for Site {
    type Output = Site;
    fn add(self, o: Site) -> Site {
        Site::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Site {
    type Output = Site;
    fn sub(self, o: Site) -> Site {
        Site::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Site {
    type Output = Site;
    fn neg(self) -> Site {
        Site::new(-self.x, -self.y)
    }
}

impl Mul<i64> for Site {
    type Output = Site;
    fn mul(self, k: i64) -> Site {
        Site::new(self.x * k, self.y * k)
    }
}

impl From<(i64, i64)> for Site {
    fn from((x, y): (i64, i64)) -> Self {
        Site::new(x, y)
    }
}

/// One of the eight lattice symmetries fixing the origin, stored as an
/// integer matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    m: [[i64; 2]; 2],
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { m: [[1, 0], [0, 1]] };
    pub const ROT90: Symmetry = Symmetry { m: [[0, -1], [1, 0]] };
    pub const ROT180: Symmetry = Symmetry { m: [[-1, 0], [0, -1]] };
    pub const ROT270: Symmetry = Symmetry { m: [[0, 1], [-1, 0]] };
    pub const FLIP_X: Symmetry = Symmetry { m: [[-1, 0], [0, 1]] };
    pub const FLIP_Y: Symmetry = Symmetry { m: [[1, 0], [0, -1]] };
    pub const SWAP: Symmetry = Symmetry { m: [[0, 1], [1, 0]] };
    pub const ANTI_SWAP: Symmetry = Symmetry { m: [[0, -1], [-1, 0]] };

    pub const ALL: [Symmetry; 8] = [
        Self::IDENTITY,
        Self::ROT90,
        Self::ROT180,
        Self::ROT270,
        Self::FLIP_X,
        Self::FLIP_Y,
        Self::SWAP,
        Self::ANTI_SWAP,
    ];

    #[inline]
    pub fn apply(&self, s: Site) -> Site {
        Site::new(
            self.m[0][0] * s.x + self.m[0][1] * s.y,
            self.m[1][0] * s.x + self.m[1][1] * s.y,
        )
    }

    /// Orthogonal matrices invert by transposition.
    pub fn inverse(&self) -> Symmetry {
        Symmetry { m: [[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]] }
    }

    pub fn then(&self, next: &Symmetry) -> Symmetry {
        let a = &next.m;
        let b = &self.m;
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Symmetry { m }
    }
}

/// Integer rectangle `[x0, x0 + width) × [y0, y0 + height)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: i64,
    pub y0: i64,
    pub width: i64,
    pub height: i64,
}

impl Rect {
    pub const EMPTY: Rect = Rect { x0: 0, y0: 0, width: 0, height: 0 };

    pub fn new(x0: i64, y0: i64, width: i64, height: i64) -> Self {
        Rect { x0, y0, width: width.max(0), height: height.max(0) }
    }

    /// Smallest rectangle holding both corners, inclusive.
    pub fn spanning(min: Site, max: Site) -> Self {
        Rect::new(min.x, min.y, max.x - min.x + 1, max.y - min.y + 1)
    }

    /// Square `[-r, r]²`.
    pub fn centered(r: i64) -> Self {
        Rect::new(-r, -r, 2 * r + 1, 2 * r + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    pub fn x1(&self) -> i64 {
        self.x0 + self.width
    }

    pub fn y1(&self) -> i64 {
        self.y0 + self.height
    }

    pub fn area(&self) -> i64 {
        self.width * self.height
    }

    #[inline]
    pub fn contains(&self, s: Site) -> bool {
        s.x >= self.x0 && s.x < self.x1() && s.y >= self.y0 && s.y < self.y1()
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.is_empty()
            || (other.x0 >= self.x0
                && other.y0 >= self.y0
                && other.x1() <= self.x1()
                && other.y1() <= self.y1())
    }

    /// Shrinks (positive `by`) or grows (negative `by`) every side.
    pub fn shrink(&self, by: i64) -> Rect {
        if self.is_empty() {
            return *self;
        }
        Rect::new(self.x0 + by, self.y0 + by, self.width - 2 * by, self.height - 2 * by)
    }

    pub fn grow(&self, by: i64) -> Rect {
        self.shrink(-by)
    }

    pub fn intersect(&self, other: &Rect) -> Rect {
        let x0 = self.x0.max(other.x0);
        let y0 = self.y0.max(other.y0);
        let x1 = self.x1().min(other.x1());
        let y1 = self.y1().min(other.y1());
        Rect::new(x0, y0, x1 - x0, y1 - y0)
    }

    pub fn union(&self, other: &Rect) -> Rect {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        let x0 = self.x0.min(other.x0);
        let y0 = self.y0.min(other.y0);
        let x1 = self.x1().max(other.x1());
        let y1 = self.y1().max(other.y1());
        Rect::new(x0, y0, x1 - x0, y1 - y0)
    }

    /// Cells in row-major order, bottom row first.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        let (x0, x1) = (self.x0, self.x1());
        (self.y0..self.y1()).flat_map(move |y| (x0..x1).map(move |x| Site::new(x, y)))
    }
}
