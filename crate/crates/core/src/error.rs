use alloc::string::String;
use core::fmt;

use crate::ca::Site;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures of the core operations. Rule violations are reported as data by
/// [`crate::ca::validate_rule`] and only surface here when an operation needs
/// a rule it cannot work with.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A neighborhood or rule description is malformed.
    InvalidInput(String),
    /// The rule breaks a standing assumption the operation relies on.
    InvalidRule(String),
    /// An offset was used that is not part of the neighborhood.
    OffsetOutsideNeighborhood(Site),
    /// No cell of the window is known exactly any more.
    WindowExhausted { time: u64 },
    /// Some direction does not advance under the deterministic dynamics.
    NotSupercritical { direction: Site },
    /// The polar dual needs the origin strictly inside the polygon.
    OriginNotInterior,
    /// A line through the origin has no lower cut.
    LineThroughOrigin,
    /// An argument is outside the domain of a closed-form expression.
    Domain(String),
    /// The measured set is empty.
    EmptyState,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InvalidRule(msg) => write!(f, "invalid rule: {msg}"),
            Error::OffsetOutsideNeighborhood(s) => {
                write!(f, "offset ({}, {}) is not in the neighborhood", s.x, s.y)
            }
            Error::WindowExhausted { time } => write!(
                f,
                "window exhausted at time {time}: no exactly known cells remain, enlarge the window"
            ),
            Error::NotSupercritical { direction } => write!(
                f,
                "not supercritical: direction ({}, {}) does not advance",
                direction.x, direction.y
            ),
            Error::OriginNotInterior => f.write_str("origin is not strictly inside the polygon"),
            Error::LineThroughOrigin => f.write_str("line passes through the origin"),
            Error::Domain(msg) => write!(f, "argument out of domain: {msg}"),
            Error::EmptyState => f.write_str("state has no occupied cells"),
        }
    }
}

impl core::error::Error for Error {}
