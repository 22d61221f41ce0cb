use alloc::format;
use alloc::vec::Vec;

use super::perturb::PerturbationSpec;
use crate::ca::{MonotoneRule, Pattern, Site, Symmetry};
use crate::error::{Error, Result};
use crate::geometry::rational::{qr, to_f64, Q};
use crate::geometry::Direction;
use crate::rng::CounterRng;

/// Parameters of a tilted periodic strip run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripConfig {
    /// Outward normal of the initial half-plane; any direction is accepted
    /// and reduced by a lattice symmetry (see [`reduce_direction`]).
    pub direction: Direction,
    /// Strip width `M`.
    pub width: u32,
    pub horizon: u64,
    /// Steps discarded before measuring; half the horizon by default.
    pub burn_in: Option<u64>,
    /// Number of block means for the standard error.
    pub blocks: usize,
    pub replica: u64,
}

impl StripConfig {
    pub fn new(direction: Direction, width: u32, horizon: u64) -> Self {
        StripConfig { direction, width, horizon, burn_in: None, blocks: 16, replica: 0 }
    }

    pub fn burn_in_steps(&self) -> u64 {
        self.burn_in.unwrap_or(self.horizon / 2)
    }

    /// `κ = tan φ` after reduction.
    pub fn kappa(&self) -> Q {
        let r = reduce_direction(self.direction);
        qr(r.a as i128, r.b as i128)
    }
}

/// A lattice symmetry taking a direction `v` to `(-a, b)` with
/// `0 <= a <= b`, so that the reduced normal makes an angle in `[0, π/4]`
/// with `e₂` and leans left, matching the initial set `{y <= κx}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub symmetry: Symmetry,
    pub a: i64,
    pub b: i64,
}

pub fn reduce_direction(v: Direction) -> Reduction {
    let v = v.v();
    let (a, b) = (v.x.abs().min(v.y.abs()), v.x.abs().max(v.y.abs()));
    let target = Site::new(-a, b);
    let symmetry = Symmetry::ALL
        .into_iter()
        .find(|g| g.apply(v) == target)
        .expect("the dihedral group acts transitively on |x|, |y| sign and order patterns");
    Reduction { symmetry, a, b }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VelocityEstimate {
    pub direction: Direction,
    /// `w_π(u)` in cells per step along the unit normal.
    pub estimate: f64,
    pub stderr: f64,
    /// Number of block means.
    pub samples: u64,
    pub master_seed: u64,
    pub replica: u64,
}

/// Velocity estimate plus the interface traces of one strip run.
#[derive(Clone, Debug, PartialEq)]
pub struct StripRun {
    pub estimate: VelocityEstimate,
    pub kappa: Q,
    /// `h⁰_t`: smallest lowest-vacancy height over the columns.
    pub h0: Vec<f64>,
    /// `h¹_t`: largest top height over the columns.
    pub h1: Vec<f64>,
    /// Mean top height over the columns.
    pub mean_height: Vec<f64>,
}

pub fn strip_velocity(spec: &PerturbationSpec, cfg: &StripConfig, master_seed: u64) -> Result<VelocityEstimate> {
    Ok(strip_run(spec, cfg, master_seed)?.estimate)
}

/// Runs the tilted strip `[0, M) × Z` from `{y <= κx}`. Column `x >= M` is
/// column `x - M` shifted down by `⌈κM⌉`, column `x < 0` is column `x + M`
/// shifted up by `⌊κM⌋`.
pub fn strip_run(spec: &PerturbationSpec, cfg: &StripConfig, master_seed: u64) -> Result<StripRun> {
    let red = reduce_direction(cfg.direction);
    let rule = spec.rule().transformed(&red.symmetry);
    let burn = cfg.burn_in_steps();
    if cfg.horizon <= burn {
        return Err(Error::InvalidInput(format!(
            "horizon {} must exceed the burn-in {burn}",
            cfg.horizon
        )));
    }
    let r = rule.neighborhood().radius();
    if (cfg.width as i64) <= 2 * r {
        return Err(Error::InvalidInput(format!(
            "strip width {} must exceed twice the neighborhood radius",
            cfg.width
        )));
    }
    if cfg.blocks == 0 {
        return Err(Error::InvalidInput("at least one block is needed".into()));
    }
    let mut strip = Strip::new(&rule, cfg.width as i64, red.a, red.b);
    let rng = CounterRng::new(master_seed, cfg.replica);

    let steps = cfg.horizon - burn;
    let nb = (cfg.blocks as u64).min(steps);
    let block_len = steps / nb;
    let start = cfg.horizon - nb * block_len;
    let mut marks: Vec<i64> = Vec::with_capacity(nb as usize + 1);
    let mut h0 = Vec::with_capacity(cfg.horizon as usize + 1);
    let mut h1 = Vec::with_capacity(cfg.horizon as usize + 1);
    let mut mean = Vec::with_capacity(cfg.horizon as usize + 1);
    for t in 0..=cfg.horizon {
        if t > 0 {
            strip.step(&rule, spec, &rng);
        }
        let (lo, hi, m) = strip.heights();
        h0.push(lo);
        h1.push(hi);
        mean.push(m);
        if t >= start && (t - start) % block_len == 0 {
            marks.push(strip.top_sum);
        }
    }
    let deltas: Vec<i128> = marks.windows(2).map(|w| (w[1] - w[0]) as i128).collect();
    let (sum, sum_sq) = deltas.iter().fold((0i128, 0i128), |(s, q), &d| (s + d, q + d * d));
    let n = deltas.len() as i128;
    let m = cfg.width as f64;
    let norm = libm::sqrt((red.a * red.a + red.b * red.b) as f64);
    let cos_phi = red.b as f64 / norm;
    let scale = cos_phi / (m * block_len as f64);
    let estimate = sum as f64 / n as f64 * scale;
    let stderr = if n < 2 {
        f64::INFINITY
    } else {
        let var_num = n * sum_sq - sum * sum; // n² × population variance... exact
        let var = var_num as f64 / (n * (n - 1)) as f64;
        libm::sqrt(var / n as f64) * scale
    };
    Ok(StripRun {
        estimate: VelocityEstimate {
            direction: cfg.direction,
            estimate,
            stderr,
            samples: n as u64,
            master_seed,
            replica: cfg.replica,
        },
        kappa: qr(red.a as i128, red.b as i128),
        h0,
        h1,
        mean_height: mean,
    })
}

struct Strip {
    m: i64,
    a: i64,
    b: i64,
    /// `⌈κM⌉` and `⌊κM⌋`.
    up: i64,
    down: i64,
    words: usize,
    /// Rows `y >= 0`; everything below row 0 is occupied.
    rows: Vec<u64>,
    top: Vec<i64>,
    lowvac: Vec<i64>,
    top_sum: i64,
    offsets: Vec<(usize, Site)>,
    radius: i64,
    pattern_kind: bool,
    time: u64,
}

impl Strip {
    fn new(rule: &MonotoneRule, m: i64, a: i64, b: i64) -> Self {
        let km = a * m;
        let (down, up) = (km.div_euclid(b), -(-km).div_euclid(b));
        let words = (m as usize).div_ceil(64);
        let top: Vec<i64> = (0..m).map(|x| (a * x).div_euclid(b)).collect();
        let nb = rule.neighborhood();
        let mut s = Strip {
            m,
            a,
            b,
            up,
            down,
            words,
            rows: Vec::new(),
            lowvac: top.iter().map(|t| t + 1).collect(),
            top_sum: top.iter().sum(),
            top,
            offsets: nb.offsets().iter().copied().enumerate().filter(|(_, s)| !s.is_zero()).collect(),
            radius: nb.radius(),
            pattern_kind: rule.needs_pattern(),
            time: 0,
        };
        for x in 0..m {
            for y in 0..=s.top[x as usize] {
                s.set(x, y);
            }
        }
        s
    }

    fn ensure_rows(&mut self, y: i64) {
        let need = (y + 1) as usize * self.words;
        if self.rows.len() < need {
            self.rows.resize(need, 0);
        }
    }

    fn set(&mut self, x: i64, y: i64) {
        if y < 0 {
            return;
        }
        self.ensure_rows(y);
        self.rows[y as usize * self.words + x as usize / 64] |= 1 << (x % 64);
    }

    #[inline]
    fn get_local(&self, x: i64, y: i64) -> bool {
        if y < 0 {
            return true;
        }
        let i = y as usize * self.words + x as usize / 64;
        i < self.rows.len() && self.rows[i] >> (x % 64) & 1 == 1
    }

    /// State of any cell of the extended strip `[-M, 2M) × Z`.
    #[inline]
    fn get(&self, x: i64, y: i64) -> bool {
        if x >= self.m {
            self.get_local(x - self.m, y - self.up)
        } else if x < 0 {
            self.get_local(x + self.m, y + self.down)
        } else {
            self.get_local(x, y)
        }
    }

    fn virtual_top(&self, x: i64) -> i64 {
        if x >= self.m {
            self.top[(x - self.m) as usize] + self.up
        } else if x < 0 {
            self.top[(x + self.m) as usize] - self.down
        } else {
            self.top[x as usize]
        }
    }

    fn step(&mut self, rule: &MonotoneRule, spec: &PerturbationSpec, rng: &CounterRng) {
        let r = self.radius;
        let mut born: Vec<(i64, i64)> = Vec::new();
        for x in 0..self.m {
            let reach = (-r..=r).map(|dx| self.virtual_top(x + dx)).max().unwrap_or(0) + r;
            for y in self.lowvac[x as usize]..=reach {
                if self.get_local(x, y) {
                    continue;
                }
                let pi = if self.pattern_kind {
                    let mut p = Pattern::EMPTY;
                    for &(i, s) in &self.offsets {
                        if self.get(x + s.x, y + s.y) {
                            p = p.with(i);
                        }
                    }
                    rule.probability(p)
                } else {
                    let c = self.offsets.iter().filter(|(_, s)| self.get(x + s.x, y + s.y)).count();
                    rule.probability_counted(c, false)
                };
                if pi <= 0.0 {
                    continue;
                }
                let prob = spec.occupation_probability(pi);
                if prob >= 1.0 || rng.uniform(x, y, self.time) <= prob {
                    born.push((x, y));
                }
            }
        }
        for &(x, y) in &born {
            self.set(x, y);
            let xi = x as usize;
            if y > self.top[xi] {
                self.top_sum += y - self.top[xi];
                self.top[xi] = y;
            }
        }
        for x in 0..self.m {
            let mut l = self.lowvac[x as usize];
            while self.get_local(x, l) {
                l += 1;
            }
            self.lowvac[x as usize] = l;
        }
        self.time += 1;
    }

    /// `(min h⁰, max h¹, mean top height)` with heights measured from the
    /// line `y = κx`.
    fn heights(&self) -> (f64, f64, f64) {
        let k = to_f64(qr(self.a as i128, self.b as i128));
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for x in 0..self.m {
            let tilt = k * x as f64;
            lo = lo.min(self.lowvac[x as usize] as f64 - tilt);
            hi = hi.max(self.top[x as usize] as f64 + 1.0 - tilt);
        }
        let mean = self.top_sum as f64 / self.m as f64 + 1.0 - k * (self.m - 1) as f64 / 2.0;
        (lo, hi, mean)
    }
}

/// Radial sample of the empirical `K_{1/w_p}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KSample {
    pub estimate: VelocityEstimate,
    /// `u / w`, or `None` when the estimate is not positive.
    pub radial: Option<(f64, f64)>,
}

/// Strip velocities for a list of directions.
pub fn estimate_k_polygon(
    spec: &PerturbationSpec,
    directions: &[Direction],
    template: &StripConfig,
    master_seed: u64,
) -> Result<Vec<KSample>> {
    directions
        .iter()
        .map(|&d| {
            let cfg = StripConfig { direction: d, ..template.clone() };
            let estimate = strip_velocity(spec, &cfg, master_seed)?;
            Ok(k_sample(estimate))
        })
        .collect()
}

pub fn k_sample(estimate: VelocityEstimate) -> KSample {
    let (ux, uy) = estimate.direction.unit();
    let radial = (estimate.estimate > 0.0).then(|| (ux / estimate.estimate, uy / estimate.estimate));
    KSample { estimate, radial }
}
