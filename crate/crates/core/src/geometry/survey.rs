use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::lambda::lambda_star_set;
use super::speed::{sweep_directions, ProjectionTable};
use super::star::{classify_star, interleave, k_prime, star_from_table, Case, CaseLabel, StarBoundary};
use crate::ca::Neighborhood;
use crate::error::{Error, Result};

/// Largest box range accepted by [`survey`] and [`k_family`].
pub const MAX_SURVEY_RANGE: i64 = 16;

/// Threshold rules on one box neighborhood, sharing sorted projections.
#[derive(Clone, Debug)]
pub struct ThresholdFamily {
    rho: i64,
    table: ProjectionTable,
}

impl ThresholdFamily {
    pub fn new(rho: i64) -> Result<Self> {
        check_range(rho)?;
        let nb = Neighborhood::box_range(rho);
        let dirs = interleave(&sweep_directions(&nb));
        Ok(ThresholdFamily { rho, table: ProjectionTable::new(&nb, dirs) })
    }

    pub fn rho(&self) -> i64 {
        self.rho
    }

    /// Number of supercritical thresholds, `rho (2 rho + 1)`.
    pub fn supercritical_count(&self) -> u32 {
        (self.rho * (2 * self.rho + 1)) as u32
    }

    pub fn star(&self, theta: u32) -> Result<StarBoundary> {
        star_from_table(&self.table, theta)
    }
}

fn check_range(rho: i64) -> Result<()> {
    if !(1..=MAX_SURVEY_RANGE).contains(&rho) {
        return Err(Error::InvalidInput(format!(
            "box range must be in 1..={MAX_SURVEY_RANGE}, got {rho}"
        )));
    }
    Ok(())
}

/// One threshold of a box survey.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRow {
    pub theta: u32,
    pub label: CaseLabel,
    /// `theta` is not `Λ*(x)` for any `x`.
    pub exactly_stable: bool,
    pub vertex_count: usize,
    pub kprime_points: usize,
    pub kprime_segments: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survey {
    pub rho: i64,
    pub rows: Vec<SurveyRow>,
    /// `{Λ*(x) : x ∈ N \ {0}}`.
    pub lambda_set: BTreeSet<usize>,
    /// Thresholds where the segment test and the `Λ*` test disagree.
    pub disagreements: Vec<u32>,
}

impl Survey {
    pub fn thetas_with(&self, case: Case) -> Vec<u32> {
        self.rows.iter().filter(|r| r.label.case == case).map(|r| r.theta).collect()
    }

    pub fn unstable(&self) -> Vec<u32> {
        self.rows.iter().filter(|r| !r.exactly_stable).map(|r| r.theta).collect()
    }
}

/// Classifies every supercritical threshold of the range-`rho` box and
/// cross-checks Case 3 against the `Λ*` values.
pub fn survey(rho: i64) -> Result<Survey> {
    let family = ThresholdFamily::new(rho)?;
    let lambda_set = lambda_star_set(rho);
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for theta in 1..=family.supercritical_count() {
        let star = family.star(theta)?;
        let kp = k_prime(&star);
        let label = classify_star(&star);
        let exactly_stable = !lambda_set.contains(&(theta as usize));
        if (label.case == Case::Case3) == exactly_stable {
            disagreements.push(theta);
        }
        rows.push(SurveyRow {
            theta,
            label,
            exactly_stable,
            vertex_count: star.vertex_count(),
            kprime_points: kp.isolated_points().len(),
            kprime_segments: kp.segments().len(),
        });
    }
    Ok(Survey { rho, rows, lambda_set, disagreements })
}

/// Exact stars `K_1, ..., K_{rho(2rho+1)}` of the range-`rho` box.
pub fn k_family(rho: i64) -> Result<Vec<StarBoundary>> {
    let family = ThresholdFamily::new(rho)?;
    (1..=family.supercritical_count()).map(|t| family.star(t)).collect()
}
