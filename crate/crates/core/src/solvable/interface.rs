use alloc::format;
use alloc::vec::Vec;

use super::model::solvable_rule;
use super::shape::phi;
use crate::ca::{Background, HalfPlane, LatticeState, Rect, Site};
use crate::error::{Error, Result};
use crate::geometry::rational::q;
use crate::rng::CounterRng;
use crate::sim::{PerturbationSpec, RandomRun};

/// Heights `h_t(n) = g_t(n − t) − n` of the run from the wedge `W₁`, where
/// `g_t(x)` is the top of column `x`. Entries past the stored range are on
/// the initial staircase, `h_t(n) = t − n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterfaceState {
    pub t: u64,
    pub h: Vec<i64>,
}

impl InterfaceState {
    /// `h₀(n) = −n`, i.e. `g₀ = 0` on `x >= 0`.
    pub fn initial(len: usize) -> Self {
        InterfaceState { t: 0, h: (0..len as i64).map(|n| -n).collect() }
    }

    pub fn get(&self, n: usize) -> i64 {
        self.h.get(n).copied().unwrap_or(self.t as i64 - n as i64)
    }

    /// One step. Column `n` copies its left neighbor when that one is
    /// higher; otherwise it moves up with probability `p`, using the
    /// uniform of the lattice cell `(t + 1 − n, −(h + n + 1))` at time `t`.
    pub fn step(&mut self, p: f64, rng: &CounterRng) {
        let t = self.t;
        for n in (0..self.h.len()).rev() {
            let h = self.h[n];
            let forced = n > 0 && self.h[n - 1] > h;
            let ni = n as i64;
            if forced || p >= 1.0 || rng.uniform(t as i64 + 1 - ni, -(h + ni + 1), t) <= p {
                self.h[n] = h + 1;
            }
        }
        self.t += 1;
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} outside (0, 1]")))
    }
}

pub fn simulate_interface(p: f64, horizon: u64, master_seed: u64) -> Result<InterfaceState> {
    simulate_interface_replica(p, horizon, master_seed, 0)
}

pub fn simulate_interface_replica(p: f64, horizon: u64, master_seed: u64, replica: u64) -> Result<InterfaceState> {
    check_p(p)?;
    let rng = CounterRng::new(master_seed, replica);
    let mut st = InterfaceState::initial(horizon as usize + 2);
    for _ in 0..horizon {
        st.step(p, &rng);
    }
    Ok(st)
}

/// Limit of `h_t(⌊αt⌋)/t`.
pub fn interface_limit(p: f64, alpha: f64) -> Result<f64> {
    if alpha < 0.0 {
        return Err(Error::Domain(format!("alpha = {alpha} is negative")));
    }
    if alpha <= 1.0 - p {
        Ok(phi(p, 1.0 - alpha)? - alpha)
    } else {
        Ok(1.0 - alpha)
    }
}

/// The two-dimensional run on `−W₁ = W₃`. The stated update convention
/// reads the wedge dynamics point-reflected, so column `x` of the
/// interface picture is lattice column `−x`, flipped vertically.
struct LatticeRun {
    run: RandomRun,
    spec: PerturbationSpec,
    cols: usize,
}

impl LatticeRun {
    fn new(p: f64, horizon: u64, master_seed: u64, replica: u64) -> Result<Self> {
        let spec = PerturbationSpec::custom(solvable_rule(p)?)?;
        let t = horizon as i64;
        let window = Rect::new(-2 * t - 4, -2 * t - 4, 5 * t + 9, 4 * t + 9);
        let bg = Background::Wedge(HalfPlane::new(Site::new(1, 0), q(0)), HalfPlane::new(Site::new(0, -1), q(0)));
        let run = RandomRun::new(LatticeState::new(window, bg), master_seed, replica);
        Ok(LatticeRun { run, spec, cols: horizon as usize + 1 })
    }

    fn advance(&mut self) -> Result<()> {
        self.run.advance(&self.spec).map(|_| ())
    }

    /// `h_t(n)` read off lattice column `t − n`, or `None` when that column
    /// is not an up-closed interval inside the valid region. Columns right
    /// of the front must be empty; `Some(None)` flags a violation there.
    fn heights(&self) -> (Vec<Option<i64>>, bool) {
        let st = &self.run.state;
        let t = st.time() as i64;
        let valid = st.valid();
        let column = |x: i64| -> Option<Option<i64>> {
            let mut lowest = None;
            for y in valid.y0..valid.y1() {
                let occ = st.occupied(Site::new(x, y));
                match (lowest, occ) {
                    (None, true) => lowest = Some(y),
                    (Some(_), false) => return None,
                    _ => {}
                }
            }
            Some(lowest)
        };
        let n_max = t as usize + self.cols;
        let hs = (0..n_max)
            .map(|n| {
                let ni = n as i64;
                match column(t - ni) {
                    Some(Some(y)) => Some(-y - ni),
                    _ => None,
                }
            })
            .collect();
        let empty_right = (1..=self.cols as i64).all(|k| column(t + k) == Some(None));
        (hs, empty_right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub t: u64,
    pub n: usize,
    pub interface: i64,
    /// `None` when the lattice column is empty or not an interval.
    pub lattice: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub horizon: u64,
    pub compared: u64,
    pub mismatches: u64,
    /// Steps at which a column left of the front was not a lower set, or a
    /// column beyond it was occupied.
    pub shape_violations: u64,
    pub first_divergence: Option<Divergence>,
}

impl EquivalenceReport {
    pub fn is_exact(&self) -> bool {
        self.mismatches == 0 && self.shape_violations == 0
    }
}

/// Runs the lattice model and the interface recursion on shared
/// randomness and compares every height for `t <= horizon`.
pub fn equivalence_check(p: f64, horizon: u64, master_seed: u64) -> Result<EquivalenceReport> {
    check_p(p)?;
    let mut lattice = LatticeRun::new(p, horizon, master_seed, 0)?;
    let rng = CounterRng::new(master_seed, 0);
    let mut iface = InterfaceState::initial(2 * horizon as usize + 2);
    let mut rep = EquivalenceReport { horizon, compared: 0, mismatches: 0, shape_violations: 0, first_divergence: None };
    for t in 0..=horizon {
        if t > 0 {
            lattice.advance()?;
            iface.step(p, &rng);
        }
        let (hs, empty_right) = lattice.heights();
        if !empty_right {
            rep.shape_violations += 1;
        }
        for (n, h) in hs.into_iter().enumerate() {
            rep.compared += 1;
            let want = iface.get(n);
            if h != Some(want) {
                rep.mismatches += 1;
                if h.is_none() {
                    rep.shape_violations += 1;
                }
                rep.first_divergence.get_or_insert(Divergence { t, n, interface: want, lattice: h });
            }
        }
    }
    Ok(rep)
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 1.0;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let v = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarginalReport {
    pub ks: f64,
    pub lattice: Vec<f64>,
    pub interface: Vec<f64>,
}

/// Distribution of `h_T(n)` from independent lattice and interface runs.
pub fn marginal_check(p: f64, horizon: u64, n: usize, runs: u64, master_seed: u64) -> Result<MarginalReport> {
    check_p(p)?;
    if n > horizon as usize {
        return Err(Error::InvalidInput(format!("column {n} beyond the horizon {horizon}")));
    }
    let mut lat = Vec::with_capacity(runs as usize);
    let mut itf = Vec::with_capacity(runs as usize);
    for r in 0..runs {
        let mut run = LatticeRun::new(p, horizon, master_seed, r)?;
        for _ in 0..horizon {
            run.advance()?;
        }
        let h = run.heights().0[n].ok_or_else(|| Error::InvalidInput("lattice column is not a lower set".into()))?;
        lat.push(h as f64);
        itf.push(simulate_interface_replica(p, horizon, master_seed, runs + r)?.get(n) as f64);
    }
    Ok(MarginalReport { ks: ks_statistic(&lat, &itf), lattice: lat, interface: itf })
}
