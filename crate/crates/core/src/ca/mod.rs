//! Neighborhoods, monotone rules and deterministic dynamics on `Z²`.

mod dynamics;
mod lattice;
mod neighborhood;
mod rule;
mod state;
mod validate;

pub use dynamics::{
    advance, fills_space_probe, iterate, step_deterministic, FillVerdict, Skeleton, StepDecision,
};
pub use lattice::{Rect, Site, Symmetry};
pub use neighborhood::{Neighborhood, Pattern, MAX_PATTERN_SITES};
pub use rule::{MonotoneRule, ProbTable, RuleKind, MAX_TABLE_SITES};
pub use state::{bounding_box, Background, BitGrid, HalfPlane, LatticeState};
pub use validate::{validate_rule, ValidationReport, Violation};
