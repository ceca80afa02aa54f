//! Topological entropy of toral suspensions via periodic-orbit pressure,
//! with derivative and variance checks for time-change families.

pub mod periodic;
pub mod pressure;
pub mod suspension;
pub mod variance;

pub use periodic::{periodic_points, IntMat2, PeriodicPointSet, CAT_MAP, COUNT_CAP, MAX_ORDER};
pub use pressure::{birkhoff_sums, logsumexp, pressure, pressure_on};
pub use suspension::{
    entropy_derivative_check, entropy_on, entropy_suspension, DerivativeCheck, EntropyResult,
    BRACKET_TOL,
};
pub use variance::{origin_bump, variance_estimate, VarianceEstimate};
