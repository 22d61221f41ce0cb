use alloc::format;
use alloc::vec::Vec;

use crate::ca::{advance, validate_rule, LatticeState, MonotoneRule, RuleKind, Site, StepDecision};
use crate::error::{Error, Result};
use crate::rng::CounterRng;

#[derive(Clone, Debug, PartialEq)]
pub enum PerturbationMode {
    /// Probability `p` on every skeleton-sufficient set without the origin.
    Standard(f64),
    /// The rule's own probability table.
    Custom,
}

/// A deterministic rule with occupation probabilities realizing a monotone
/// coupling.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSpec {
    rule: MonotoneRule,
    mode: PerturbationMode,
}

impl PerturbationSpec {
    /// Standard `p`-perturbation of `base` (table rules enter through their
    /// skeleton).
    pub fn standard(base: MonotoneRule, p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidInput(format!("p must be in (0, 1], got {p}")));
        }
        check_dynamics(&base)?;
        Ok(PerturbationSpec { rule: base, mode: PerturbationMode::Standard(p) })
    }

    /// A random rule given by its own probability table.
    pub fn custom(table: MonotoneRule) -> Result<Self> {
        if !matches!(table.kind(), RuleKind::ProbTable(_)) {
            return Err(Error::InvalidInput("custom perturbations need a probability table".into()));
        }
        check_dynamics(&table)?;
        Ok(PerturbationSpec { rule: table, mode: PerturbationMode::Custom })
    }

    pub fn rule(&self) -> &MonotoneRule {
        &self.rule
    }

    pub fn mode(&self) -> &PerturbationMode {
        &self.mode
    }

    /// `p = min{π(S) : π(S) > 0}`.
    pub fn p(&self) -> f64 {
        match self.mode {
            PerturbationMode::Standard(p) => p,
            PerturbationMode::Custom => self.rule.min_positive_probability(),
        }
    }

    /// The deterministic skeleton `π_d`.
    pub fn skeleton(&self) -> MonotoneRule {
        self.rule.skeleton()
    }

    /// Occupation probability of a vacant cell whose pattern has `π(S) = pi`.
    #[inline]
    pub fn occupation_probability(&self, pi: f64) -> f64 {
        match self.mode {
            PerturbationMode::Standard(p) => {
                if pi > 0.0 {
                    p
                } else {
                    0.0
                }
            }
            PerturbationMode::Custom => pi,
        }
    }

    /// Whether every positive probability is 1, so the dynamics coincide
    /// with the skeleton.
    pub fn is_deterministic(&self) -> bool {
        match self.mode {
            PerturbationMode::Standard(p) => p >= 1.0,
            PerturbationMode::Custom => self.rule.min_positive_probability() >= 1.0,
        }
    }
}

fn check_dynamics(rule: &MonotoneRule) -> Result<()> {
    let report = validate_rule(rule);
    if !report.admits_dynamics() {
        let first = report.violations.iter().find(|v| !matches!(v, crate::ca::Violation::Asymmetric { .. }));
        return Err(Error::InvalidRule(format!("{}", first.expect("some violation"))));
    }
    Ok(())
}

/// One uniform per vacant cell and step, keyed by the cell and time: the cell
/// is occupied iff `U <= π(S)`. Since `π` is monotone this couples all
/// configurations (and all `p`) at once.
pub struct Coupled<'a> {
    spec: &'a PerturbationSpec,
    rng: CounterRng,
}

impl<'a> Coupled<'a> {
    pub fn new(spec: &'a PerturbationSpec, master_seed: u64, replica: u64) -> Self {
        Coupled { spec, rng: CounterRng::new(master_seed, replica) }
    }
}

impl StepDecision for Coupled<'_> {
    #[inline]
    fn occupy(&mut self, x: Site, time: u64, pi: f64) -> bool {
        let prob = self.spec.occupation_probability(pi);
        prob >= 1.0 || self.rng.uniform(x.x, x.y, time) <= prob
    }

    fn is_skeleton(&self) -> bool {
        self.spec.is_deterministic()
    }
}

/// A state evolving under a perturbation with a fixed random stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomRun {
    pub state: LatticeState,
    pub master_seed: u64,
    pub replica: u64,
}

impl RandomRun {
    pub fn new(state: LatticeState, master_seed: u64, replica: u64) -> Self {
        RandomRun { state, master_seed, replica }
    }

    pub fn time(&self) -> u64 {
        self.state.time()
    }

    /// One coupled step in place; returns the newly occupied cells.
    pub fn advance(&mut self, spec: &PerturbationSpec) -> Result<Vec<Site>> {
        let mut d = Coupled::new(spec, self.master_seed, self.replica);
        advance(&spec.rule, &mut self.state, &mut d)
    }
}

/// One coupled random step.
pub fn sample_step(spec: &PerturbationSpec, run: &RandomRun) -> Result<RandomRun> {
    let mut next = run.clone();
    next.advance(spec)?;
    Ok(next)
}

/// Snapshots and per-cell occupation times of a run from a finite seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// States at times `0, k, 2k, ...` (and the horizon).
    pub snapshots: Vec<LatticeState>,
    pub final_state: LatticeState,
    /// `(cell, time)` at which each cell became occupied; seed cells at 0.
    pub births: Vec<(Site, u64)>,
}

/// `horizon` coupled steps from a finite seed.
pub fn grow_finite(
    spec: &PerturbationSpec,
    a0: &[Site],
    horizon: u64,
    master_seed: u64,
    snapshot_every: Option<u64>,
) -> Result<Trajectory> {
    grow_finite_replica(spec, a0, horizon, master_seed, 0, snapshot_every)
}

pub fn grow_finite_replica(
    spec: &PerturbationSpec,
    a0: &[Site],
    horizon: u64,
    master_seed: u64,
    replica: u64,
    snapshot_every: Option<u64>,
) -> Result<Trajectory> {
    let mut run = RandomRun::new(LatticeState::finite(a0), master_seed, replica);
    let mut births: Vec<(Site, u64)> = run.state.occupied_sites().into_iter().map(|s| (s, 0)).collect();
    let mut snapshots = Vec::new();
    let every = snapshot_every.filter(|&k| k > 0);
    if every.is_some() {
        snapshots.push(run.state.clone());
    }
    for t in 1..=horizon {
        let born = run.advance(spec)?;
        births.extend(born.into_iter().map(|s| (s, t)));
        if let Some(k) = every {
            if t % k == 0 || t == horizon {
                snapshots.push(run.state.clone());
            }
        }
    }
    Ok(Trajectory { snapshots, final_state: run.state, births })
}
