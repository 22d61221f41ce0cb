use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::lattice::{Site, Symmetry};
use super::neighborhood::{Neighborhood, Pattern};
use crate::error::{Error, Result};

/// Largest neighborhood accepted by a dense probability table.
pub const MAX_TABLE_SITES: usize = 20;

/// Dense map from neighborhood subsets to occupation probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbTable {
    probs: Vec<f64>,
}

impl ProbTable {
    pub fn get(&self, p: Pattern) -> f64 {
        self.probs[p.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// `(pattern, probability)` for every subset with a positive entry.
    pub fn positive_entries(&self) -> impl Iterator<Item = (Pattern, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| (Pattern(i as u64), p))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RuleKind {
    /// Totalistic: sufficient iff at least `theta` neighbors are occupied.
    Threshold(u32),
    /// Sufficient iff some listed minimal set is contained in the pattern.
    Antichain(Vec<Pattern>),
    /// Random rule given by explicit occupation probabilities.
    ProbTable(ProbTable),
}

/// A neighborhood together with a monotone sufficiency map `π`.
///
/// The solidification override (`π(S) = 1` whenever the origin is in `S`) is
/// applied on evaluation for every kind.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneRule {
    neighborhood: Neighborhood,
    kind: RuleKind,
}

impl MonotoneRule {
    pub fn threshold(neighborhood: Neighborhood, theta: u32) -> Self {
        MonotoneRule { neighborhood, kind: RuleKind::Threshold(theta) }
    }

    /// Threshold growth with the range-`rho` box neighborhood.
    pub fn box_threshold(rho: i64, theta: u32) -> Self {
        Self::threshold(Neighborhood::box_range(rho), theta)
    }

    pub fn antichain(neighborhood: Neighborhood, minimal_sets: &[Vec<Site>]) -> Result<Self> {
        let sets = minimal_sets
            .iter()
            .map(|s| neighborhood.pattern_of(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonotoneRule { neighborhood, kind: RuleKind::Antichain(sets) })
    }

    /// Table rule from explicit entries; unlisted subsets get probability 0.
    pub fn prob_table(neighborhood: Neighborhood, entries: &[(Vec<Site>, f64)]) -> Result<Self> {
        check_table_size(&neighborhood)?;
        let mut probs = vec![0.0; 1usize << neighborhood.len()];
        for (sites, p) in entries {
            let pat = neighborhood.pattern_of(sites)?;
            probs[pat.0 as usize] = *p;
        }
        Ok(MonotoneRule { neighborhood, kind: RuleKind::ProbTable(ProbTable { probs }) })
    }

    /// Table rule from a function of the pattern.
    pub fn prob_table_fn(neighborhood: Neighborhood, f: impl Fn(Pattern) -> f64) -> Result<Self> {
        check_table_size(&neighborhood)?;
        let probs = (0..1u64 << neighborhood.len()).map(|m| f(Pattern(m))).collect();
        Ok(MonotoneRule { neighborhood, kind: RuleKind::ProbTable(ProbTable { probs }) })
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(self.kind, RuleKind::ProbTable(_))
    }

    /// Whether evaluation needs subset patterns rather than counts.
    pub fn needs_pattern(&self) -> bool {
        !matches!(self.kind, RuleKind::Threshold(_))
    }

    /// `π(S)` for a subset of offsets given as sites.
    pub fn sufficiency(&self, sites: &[Site]) -> Result<f64> {
        let mut set = BTreeSet::new();
        for &s in sites {
            if !self.neighborhood.contains(s) {
                return Err(Error::OffsetOutsideNeighborhood(s));
            }
            set.insert(s);
        }
        let has_origin = set.contains(&Site::ORIGIN);
        match &self.kind {
            RuleKind::Threshold(_) => Ok(self.probability_counted(set.len(), has_origin)),
            _ => {
                let v: Vec<Site> = set.into_iter().collect();
                Ok(self.probability(self.neighborhood.pattern_of(&v)?))
            }
        }
    }

    /// `π(S)` for a pattern. Threshold rules use its popcount.
    #[inline]
    pub fn probability(&self, s: Pattern) -> f64 {
        if s.contains_index(self.neighborhood.origin_index()) {
            return 1.0;
        }
        match &self.kind {
            RuleKind::Threshold(theta) => {
                if s.len() >= *theta {
                    1.0
                } else {
                    0.0
                }
            }
            RuleKind::Antichain(sets) => {
                if sets.iter().any(|m| m.is_subset_of(s)) {
                    1.0
                } else {
                    0.0
                }
            }
            RuleKind::ProbTable(t) => t.get(s),
        }
    }

    /// `π(S)` for threshold rules, from `|S|` alone.
    #[inline]
    pub fn probability_counted(&self, count: usize, has_origin: bool) -> f64 {
        match &self.kind {
            RuleKind::Threshold(theta) => {
                if has_origin || count >= *theta as usize {
                    1.0
                } else {
                    0.0
                }
            }
            _ => panic!("probability_counted is only defined for threshold rules"),
        }
    }

    /// The deterministic skeleton `π_d(S) = 1{π(S) > 0}` evaluated on a cut.
    /// `count` must equal `|S|`; `pattern` is ignored for threshold rules.
    #[inline]
    pub fn skeleton_fires(&self, pattern: Pattern, count: usize, has_origin: bool) -> bool {
        match &self.kind {
            RuleKind::Threshold(_) => self.probability_counted(count, has_origin) > 0.0,
            _ => self.probability(pattern) > 0.0,
        }
    }

    /// The deterministic skeleton as a rule of its own. Table rules become
    /// antichains of their inclusion-minimal positive sets.
    pub fn skeleton(&self) -> MonotoneRule {
        match &self.kind {
            RuleKind::ProbTable(t) => {
                let origin = self.neighborhood.origin_index();
                let n = self.neighborhood.len();
                let positive: Vec<Pattern> = t
                    .positive_entries()
                    .map(|(p, _)| p)
                    .filter(|p| !p.contains_index(origin))
                    .collect();
                let minimal = positive
                    .iter()
                    .copied()
                    .filter(|&p| {
                        (0..n).filter(|&i| p.contains_index(i)).all(|i| {
                            let smaller = Pattern(p.0 & !(1 << i));
                            t.get(smaller) <= 0.0
                        })
                    })
                    .collect();
                MonotoneRule {
                    neighborhood: self.neighborhood.clone(),
                    kind: RuleKind::Antichain(minimal),
                }
            }
            _ => self.clone(),
        }
    }

    /// `min{π(S) : π(S) > 0}`, which is 1 for deterministic rules.
    pub fn min_positive_probability(&self) -> f64 {
        match &self.kind {
            RuleKind::ProbTable(t) => {
                t.positive_entries().map(|(_, p)| p).fold(1.0, f64::min)
            }
            _ => 1.0,
        }
    }

    /// The same rule seen through a lattice symmetry. Offset indices are
    /// preserved, so patterns carry over unchanged.
    pub fn transformed(&self, g: &Symmetry) -> MonotoneRule {
        MonotoneRule { neighborhood: self.neighborhood.transformed(g), kind: self.kind.clone() }
    }
}

fn check_table_size(n: &Neighborhood) -> Result<()> {
    if n.len() > MAX_TABLE_SITES {
        return Err(Error::InvalidInput(format!(
            "probability tables support at most {MAX_TABLE_SITES} sites, got {}",
            n.len()
        )));
    }
    Ok(())
}
