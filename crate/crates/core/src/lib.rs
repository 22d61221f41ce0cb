//! Exact asymptotic shapes and stability classes for two-dimensional monotone
//! growth cellular automata, plus a reproducible coupled-randomness engine for
//! their random perturbations.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, rendering and the
//! command-line front end live in the `polygrowth-lab` companion crate.
//!
//! Layout:
//! * [`ca`]: neighborhoods, monotone rules, lattice states and deterministic
//!   stepping (including from half-spaces and wedges).
//! * [`geometry`]: half-space speeds, the star-shaped set `K_{1/w}`, its
//!   polar (the Wulff shape), the contact set with the convex hull, the
//!   three-way case classification and the box-neighborhood survey.
//! * [`sim`]: perturbations, coupled random stepping, tilted periodic strips,
//!   distance measurements and the hole-repair experiment.
//! * [`solvable`]: the seven-site model whose random shape is known in closed
//!   form, used as a statistical oracle.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod ca;
pub mod error;
pub mod geometry;
pub mod rng;
pub mod sim;
pub mod solvable;

pub use ca::{
    Background, HalfPlane, LatticeState, MonotoneRule, Neighborhood, Pattern, Rect, RuleKind, Site,
    Symmetry, ValidationReport, Violation,
};
pub use error::{Error, Result};
pub use geometry::{CaseLabel, Direction, Q, RationalPoint, RationalPolygon, StarBoundary};
