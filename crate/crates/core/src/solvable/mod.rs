//! The exactly solvable perturbation of the additive rule on the
//! seven-site neighborhood: its probability table, the closed-form wedge
//! and limit shapes, and the one-dimensional interface recursion.

mod interface;
mod model;
mod shape;

pub use interface::{
    equivalence_check, interface_limit, ks_statistic, marginal_check, simulate_interface,
    simulate_interface_replica, Divergence, EquivalenceReport, InterfaceState, MarginalReport,
};
pub use model::{skeleton_rule, solvable_neighborhood, solvable_rule};
pub use shape::{phi, shape_lp, wedge_shape, y_zero, Bound, Piece, ShapeCurve, Wedge, XBound};
