//! Local functionals of 3-torus fields: the spectral sum over hyperbolic
//! zeros and the certified shortest periodic-orbit period of suspensions.

pub mod period;
pub mod zeros;

pub use period::{min_period, MinPeriodResult, MAX_SEARCH_ORDER};
pub use zeros::{find_zeros, s_functional, SFunctional, ZeroRecord, DEDUPE_TOL};
