//! Random `p`-perturbations with a coupled counter-based randomness source,
//! tilted periodic strips for half-space velocities, and the distance and
//! repair measurements used to compare random and deterministic growth.

pub mod measure;
pub mod perturb;
pub mod strip;

pub use measure::{
    corner_lag, default_seed, fit_slope, hausdorff_to_polygon, hole_repair, nearest_occupied,
    CornerLagSample, HoleLocation, HoleRepairReport, HoleSpec,
};
pub use perturb::{
    grow_finite, grow_finite_replica, sample_step, Coupled, PerturbationMode, PerturbationSpec,
    RandomRun, Trajectory,
};
pub use strip::{
    estimate_k_polygon, k_sample, reduce_direction, strip_run, strip_velocity, KSample, Reduction,
    StripConfig, StripRun, VelocityEstimate,
};
