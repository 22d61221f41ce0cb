use alloc::vec::Vec;

use super::lattice::{Rect, Site};
use super::neighborhood::Pattern;
use super::rule::MonotoneRule;
use super::state::{Background, HalfPlane, LatticeState};
use crate::error::{Error, Result};
use crate::geometry::rational::{q, RationalPoint, Q};
use crate::geometry::{speed_vec, wulff_shape};

/// How a vacant cell reacts to its neighborhood.
pub trait StepDecision {
    /// Whether the vacant cell `x` is occupied at `time + 1`, given
    /// `pi = π(S) > 0` for its occupied neighborhood pattern `S`.
    fn occupy(&mut self, x: Site, time: u64, pi: f64) -> bool;

    /// True for the deterministic skeleton, which lets half-space
    /// backgrounds advance analytically.
    fn is_skeleton(&self) -> bool {
        false
    }
}

/// Deterministic skeleton: occupy iff `π(S) > 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Skeleton;

impl StepDecision for Skeleton {
    fn occupy(&mut self, _x: Site, _time: u64, _pi: f64) -> bool {
        true
    }

    fn is_skeleton(&self) -> bool {
        true
    }
}

/// One synchronous update in place. Returns the newly occupied cells.
///
/// The empty background grows the window so that new cells always fit. A
/// half-space background advances by `w̃(normal)` when the step is the
/// skeleton and the border band of the window still matches it; otherwise it
/// stops being exact and the valid region shrinks by the neighborhood radius
/// on every later step.
pub fn advance<D: StepDecision>(
    rule: &MonotoneRule,
    state: &mut LatticeState,
    decide: &mut D,
) -> Result<Vec<Site>> {
    let r = rule.neighborhood().radius().max(1);
    let mut active = state.window;
    if matches!(state.background, Background::Empty) {
        let bbox = state.occupied_bbox();
        let need = bbox.grow(r);
        if !state.window.contains_rect(&need) {
            let chunk = (state.window.width.max(state.window.height) / 2).max(32);
            let window = state.window.union(&bbox.grow(r + chunk));
            state.regrid(window, state.pad.max(r));
        } else if state.pad < r {
            state.regrid(state.window, r);
        }
        active = state.window.intersect(&bbox.grow(r));
    } else if state.pad < r {
        state.regrid(state.window, r);
    }

    let analytic = if !state.background_exact {
        None
    } else {
        match &state.background {
            Background::Empty => Some(Background::Empty),
            Background::HalfSpace(h) if decide.is_skeleton() && band_matches(state, r) => {
                let w = speed_vec(rule, h.normal).scaled;
                Some(Background::HalfSpace(HalfPlane::new(h.normal, h.offset + q(w as i128))))
            }
            _ => None,
        }
    };

    let born = if active.is_empty() { Vec::new() } else { collect_births(rule, state, active, decide) };
    for &s in &born {
        state.grid.set(s, true);
    }
    state.time += 1;

    match analytic {
        Some(bg) => {
            let changed = bg != state.background;
            state.background = bg;
            if changed {
                state.refresh_ring();
            }
        }
        None if state.background_exact => state.background_exact = false,
        None => state.valid = state.valid.shrink(r),
    }
    if state.valid.is_empty() {
        return Err(Error::WindowExhausted { time: state.time });
    }
    Ok(born)
}

/// Whether every window cell within `r` of the border agrees with the
/// background formula.
fn band_matches(state: &LatticeState, r: i64) -> bool {
    let w = state.window;
    let check = |x: i64, y: i64| {
        let s = Site::new(x, y);
        state.grid.get(s) == state.background.contains(s)
    };
    (w.y0..w.y1()).all(|y| {
        if y < w.y0 + r || y >= w.y1() - r {
            (w.x0..w.x1()).all(|x| check(x, y))
        } else {
            (w.x0..(w.x0 + r).min(w.x1())).all(|x| check(x, y))
                && ((w.x1() - r).max(w.x0)..w.x1()).all(|x| check(x, y))
        }
    })
}

fn collect_births<D: StepDecision>(
    rule: &MonotoneRule,
    state: &LatticeState,
    active: Rect,
    decide: &mut D,
) -> Vec<Site> {
    let g = &state.grid;
    let gx0 = g.rect().x0;
    let gy0 = g.rect().y0;
    let nb = rule.neighborhood();
    let offsets: Vec<(usize, Site)> =
        nb.offsets().iter().copied().enumerate().filter(|(_, s)| !s.is_zero()).collect();
    let pattern_kind = rule.needs_pattern();
    let radius = nb.radius();

    // nonzero word extents per grid row, to skip empty exterior words
    let rows = g.rect().height;
    let wpr = g.words_per_row() as i64;
    let extent: Vec<Option<(i64, i64)>> = (0..rows)
        .map(|row| {
            let lo = (0..wpr).find(|&w| g.word(row, w) != 0)?;
            let hi = (0..wpr).rev().find(|&w| g.word(row, w) != 0)?;
            Some((lo, hi))
        })
        .collect();

    let c0 = active.x0 - gx0;
    let c1 = active.x1() - gx0;
    let mut born = Vec::new();
    for y in active.y0..active.y1() {
        let row = y - gy0;
        let mut span: Option<(i64, i64)> = None;
        for dy in -radius..=radius {
            let rr = row + dy;
            if rr < 0 || rr >= rows {
                continue;
            }
            if let Some((lo, hi)) = extent[rr as usize] {
                span = Some(span.map_or((lo, hi), |(a, b)| (a.min(lo), b.max(hi))));
            }
        }
        let Some((lo, hi)) = span else { continue };
        let lo_c = (lo * 64 - radius).max(c0);
        let hi_c = (hi * 64 + 63 + radius).min(c1 - 1);
        if lo_c > hi_c {
            continue;
        }
        let mut w = lo_c.div_euclid(64);
        while w * 64 <= hi_c {
            let base = w * 64;
            let mut mask = !0u64;
            if base < lo_c {
                mask &= !0u64 << (lo_c - base);
            }
            if base + 63 > hi_c {
                mask &= !0u64 >> (base + 63 - hi_c);
            }
            let vacant = !g.word(row, w) & mask;
            w += 1;
            if vacant == 0 {
                continue;
            }
            let mut near = 0u64;
            for &(_, s) in &offsets {
                near |= g.read64(row + s.y, base + s.x);
            }
            let mut cand = vacant & near;
            while cand != 0 {
                let b = cand.trailing_zeros() as i64;
                cand &= cand - 1;
                let c = base + b;
                let pi = if pattern_kind {
                    let mut p = Pattern::EMPTY;
                    for &(i, s) in &offsets {
                        if g.read64(row + s.y, c + s.x) & 1 == 1 {
                            p = p.with(i);
                        }
                    }
                    rule.probability(p)
                } else {
                    let count = offsets
                        .iter()
                        .filter(|(_, s)| g.read64(row + s.y, c + s.x) & 1 == 1)
                        .count();
                    rule.probability_counted(count, false)
                };
                let x = Site::new(gx0 + c, y);
                if pi > 0.0 && decide.occupy(x, state.time, pi) {
                    born.push(x);
                }
            }
        }
    }
    born
}

/// One deterministic step, `A_{t+1} = T(A_t)`; table rules use their
/// skeleton.
pub fn step_deterministic(rule: &MonotoneRule, state: &LatticeState) -> Result<LatticeState> {
    let mut next = state.clone();
    advance(rule, &mut next, &mut Skeleton)?;
    Ok(next)
}

/// `t` deterministic steps.
pub fn iterate(rule: &MonotoneRule, state: &LatticeState, t: u64) -> Result<LatticeState> {
    let mut s = state.clone();
    for _ in 0..t {
        advance(rule, &mut s, &mut Skeleton)?;
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FillVerdict {
    /// By the horizon the state contains the Wulff shape dilated by half the
    /// elapsed time, centered on the seed.
    GrowsLikeL,
    /// A fixed point was reached before the horizon.
    Stalled,
    Inconclusive,
}

/// Runs a finite seed and reports whether it visibly fills space.
pub fn fills_space_probe(rule: &MonotoneRule, a0: &[Site], horizon: u64) -> FillVerdict {
    let mut st = LatticeState::finite(a0);
    for _ in 0..horizon {
        match advance(rule, &mut st, &mut Skeleton) {
            Ok(born) if born.is_empty() => return FillVerdict::Stalled,
            Ok(_) => {}
            Err(_) => return FillVerdict::Inconclusive,
        }
    }
    let Ok(l) = wulff_shape(rule) else { return FillVerdict::Inconclusive };
    let bbox = super::state::bounding_box(a0.iter().copied());
    if bbox.is_empty() {
        return FillVerdict::Inconclusive;
    }
    let center = RationalPoint::new(
        Q::new((bbox.x0 + bbox.x1() - 1) as i128, 2),
        Q::new((bbox.y0 + bbox.y1() - 1) as i128, 2),
    );
    let target = l.scaled(Q::new(horizon as i128, 2)).translated(center);
    let reach = (horizon as i64) * rule.neighborhood().radius() + 2;
    let area = Rect::new(
        bbox.x0 - reach,
        bbox.y0 - reach,
        bbox.width + 2 * reach,
        bbox.height + 2 * reach,
    );
    let covered = area
        .sites()
        .filter(|&s| target.contains(RationalPoint::from(s)))
        .all(|s| st.occupied(s));
    if covered {
        FillVerdict::GrowsLikeL
    } else {
        FillVerdict::Inconclusive
    }
}
