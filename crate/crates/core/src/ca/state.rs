use alloc::vec;
use alloc::vec::Vec;

use super::lattice::{Rect, Site};
use crate::geometry::rational::{floor_q, Q};

/// Row-major bit grid over a rectangle, one `u64` word per 64 cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGrid {
    rect: Rect,
    words: usize,
    data: Vec<u64>,
}

impl BitGrid {
    pub fn new(rect: Rect) -> Self {
        let words = (rect.width as usize).div_ceil(64);
        BitGrid { rect, words, data: vec![0; words * rect.height as usize] }
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn get(&self, s: Site) -> bool {
        if !self.rect.contains(s) {
            return false;
        }
        let (c, r) = ((s.x - self.rect.x0) as usize, (s.y - self.rect.y0) as usize);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, s: Site, on: bool) {
        debug_assert!(self.rect.contains(s));
        let (c, r) = ((s.x - self.rect.x0) as usize, (s.y - self.rect.y0) as usize);
        let w = &mut self.data[r * self.words + c / 64];
        if on {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    /// Word `w` of local row `r`; zero outside the grid.
    #[inline]
    pub fn word(&self, r: i64, w: i64) -> u64 {
        if r < 0 || r >= self.rect.height || w < 0 || w >= self.words as i64 {
            0
        } else {
            self.data[r as usize * self.words + w as usize]
        }
    }

    /// The 64 cells of local row `r` starting at local column `c`, which
    /// need not be word aligned.
    #[inline]
    pub fn read64(&self, r: i64, c: i64) -> u64 {
        let w = c.div_euclid(64);
        let off = c.rem_euclid(64) as u32;
        let lo = self.word(r, w);
        if off == 0 {
            lo
        } else {
            lo >> off | self.word(r, w + 1) << (64 - off)
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.data.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Copies the cells of `other` that fall inside this grid.
    pub fn copy_from(&mut self, other: &BitGrid) {
        let common = self.rect.intersect(&other.rect);
        for s in common.sites() {
            if other.get(s) {
                self.set(s, true);
            }
        }
    }
}

/// Closed lattice half-plane `{x : <x, normal> <= offset}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub normal: Site,
    pub offset: Q,
}

impl HalfPlane {
    pub fn new(normal: Site, offset: Q) -> Self {
        HalfPlane { normal, offset }
    }

    #[inline]
    pub fn contains(&self, s: Site) -> bool {
        (s.dot(self.normal) as i128) <= floor_q(self.offset)
    }
}

/// Analytic description of the state outside the simulated window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Background {
    Empty,
    HalfSpace(HalfPlane),
    /// Intersection of two half-planes.
    Wedge(HalfPlane, HalfPlane),
}

impl Background {
    #[inline]
    pub fn contains(&self, s: Site) -> bool {
        match self {
            Background::Empty => false,
            Background::HalfSpace(h) => h.contains(s),
            Background::Wedge(a, b) => a.contains(s) && b.contains(s),
        }
    }
}

/// Occupied cells over a finite window plus a background outside it.
///
/// Cells in `valid` are exact. When `background_exact` holds, cells outside
/// the window are given exactly by the background formula and `valid` is the
/// whole window. Otherwise the background only records the initial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeState {
    pub(crate) window: Rect,
    /// Covers `window.grow(pad)`; the ring holds background values.
    pub(crate) grid: BitGrid,
    pub(crate) pad: i64,
    pub(crate) background: Background,
    pub(crate) background_exact: bool,
    pub(crate) valid: Rect,
    pub(crate) time: u64,
}

impl LatticeState {
    /// Window filled from the background formula.
    pub fn new(window: Rect, background: Background) -> Self {
        let pad = 1;
        let mut grid = BitGrid::new(window.grow(pad));
        for s in grid.rect().sites() {
            if background.contains(s) {
                grid.set(s, true);
            }
        }
        LatticeState { window, grid, pad, background, background_exact: true, valid: window, time: 0 }
    }

    /// Finite set of occupied cells on an empty background.
    pub fn finite(sites: &[Site]) -> Self {
        let bbox = bounding_box(sites.iter().copied());
        let window = if bbox.is_empty() { Rect::centered(8) } else { bbox.grow(8) };
        let mut st = Self::new(window, Background::Empty);
        for &s in sites {
            st.grid.set(s, true);
        }
        st
    }

    /// Occupied cells of `rect` (inclusive corners) on an empty background.
    pub fn block(rect: Rect) -> Self {
        let sites: Vec<Site> = rect.sites().collect();
        Self::finite(&sites)
    }

    pub fn window(&self) -> Rect {
        self.window
    }

    pub fn valid(&self) -> Rect {
        self.valid
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn background(&self) -> &Background {
        &self.background
    }

    pub fn background_exact(&self) -> bool {
        self.background_exact
    }

    /// State of any cell: from the grid inside the window, from the
    /// background formula outside.
    #[inline]
    pub fn occupied(&self, s: Site) -> bool {
        if self.window.contains(s) {
            self.grid.get(s)
        } else {
            self.background.contains(s)
        }
    }

    /// Whether [`Self::occupied`] is exact at `s`.
    pub fn is_exact(&self, s: Site) -> bool {
        if self.window.contains(s) {
            self.valid.contains(s)
        } else {
            self.background_exact
        }
    }

    /// Sets a cell inside the window. Edits near the window border make the
    /// background inexact at the next step.
    pub fn set(&mut self, s: Site, on: bool) {
        assert!(self.window.contains(s), "cell ({}, {}) outside window", s.x, s.y);
        self.grid.set(s, on);
    }

    /// Occupied cells of the window, bottom row first.
    pub fn occupied_sites(&self) -> Vec<Site> {
        self.occupied_in(&self.window)
    }

    pub fn occupied_in(&self, rect: &Rect) -> Vec<Site> {
        let r = rect.intersect(&self.window);
        let mut out = Vec::new();
        let g = &self.grid;
        for y in r.y0..r.y1() {
            let row = y - g.rect.y0;
            let mut c = r.x0 - g.rect.x0;
            let end = r.x1() - g.rect.x0;
            while c < end {
                let mut bits = g.read64(row, c);
                let n = (end - c).min(64);
                if n < 64 {
                    bits &= (1u64 << n) - 1;
                }
                while bits != 0 {
                    let b = bits.trailing_zeros() as i64;
                    out.push(Site::new(g.rect.x0 + c + b, y));
                    bits &= bits - 1;
                }
                c += 64;
            }
        }
        out
    }

    /// Number of occupied cells in the window.
    pub fn count(&self) -> u64 {
        self.occupied_sites().len() as u64
    }

    /// Bounding box of the occupied cells of the window.
    pub fn occupied_bbox(&self) -> Rect {
        let g = &self.grid;
        let (c0, c1) = (self.pad, self.pad + self.window.width);
        let mut bbox = Rect::EMPTY;
        for y in self.window.y0..self.window.y1() {
            let row = y - g.rect.y0;
            let mut lo = None;
            let mut hi = None;
            for w in 0..g.words as i64 {
                let mut bits = g.word(row, w);
                let base = w * 64;
                if base + 64 > c1 {
                    bits &= low_mask(c1 - base);
                }
                if base < c0 {
                    bits &= !low_mask(c0 - base);
                }
                if bits != 0 {
                    if lo.is_none() {
                        lo = Some(base + bits.trailing_zeros() as i64);
                    }
                    hi = Some(base + 63 - bits.leading_zeros() as i64);
                }
            }
            if let (Some(lo), Some(hi)) = (lo, hi) {
                let x0 = g.rect.x0;
                bbox = bbox.union(&Rect::new(x0 + lo, y, hi - lo + 1, 1));
            }
        }
        bbox
    }

    /// Whether both states agree on every cell of `rect`.
    pub fn agrees_on(&self, other: &LatticeState, rect: &Rect) -> bool {
        rect.sites().all(|s| self.occupied(s) == other.occupied(s))
    }

    /// Reallocates the grid for a new window and padding, keeping cells and
    /// filling fresh cells from the background formula.
    pub(crate) fn regrid(&mut self, window: Rect, pad: i64) {
        let rect = window.grow(pad);
        let mut grid = BitGrid::new(rect);
        if !matches!(self.background, Background::Empty) {
            for s in rect.sites() {
                if !self.window.contains(s) && self.background.contains(s) {
                    grid.set(s, true);
                }
            }
        }
        grid.copy_from(&self.windowed_grid());
        self.grid = grid;
        if self.valid == self.window {
            self.valid = window;
        }
        self.window = window;
        self.pad = pad;
    }

    fn windowed_grid(&self) -> BitGrid {
        let mut g = BitGrid::new(self.window);
        for s in self.occupied_sites() {
            g.set(s, true);
        }
        g
    }

    /// Rewrites the padding ring from the background formula.
    pub(crate) fn refresh_ring(&mut self) {
        let rect = self.grid.rect;
        let window = self.window;
        for y in rect.y0..rect.y1() {
            let inner = y >= window.y0 && y < window.y1();
            let xs = if inner {
                [(rect.x0, window.x0), (window.x1(), rect.x1())]
            } else {
                [(rect.x0, rect.x1()), (0, 0)]
            };
            for (a, b) in xs {
                for x in a..b {
                    let s = Site::new(x, y);
                    let on = self.background.contains(s);
                    self.grid.set(s, on);
                }
            }
        }
    }
}

#[inline]
fn low_mask(n: i64) -> u64 {
    if n >= 64 {
        !0
    } else if n <= 0 {
        0
    } else {
        (1u64 << n) - 1
    }
}

/// Smallest rectangle containing all sites; empty for no sites.
pub fn bounding_box(sites: impl IntoIterator<Item = Site>) -> Rect {
    let mut it = sites.into_iter();
    let Some(first) = it.next() else { return Rect::EMPTY };
    let (mut lo, mut hi) = (first, first);
    for s in it {
        lo = Site::new(lo.x.min(s.x), lo.y.min(s.y));
        hi = Site::new(hi.x.max(s.x), hi.y.max(s.y));
    }
    Rect::spanning(lo, hi)
}
