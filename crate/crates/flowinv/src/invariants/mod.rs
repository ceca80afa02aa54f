//! Dynamical invariants of the model flows: helicity via wedge reduction,
//! rotation cocycles, and the Ruelle invariant (closed form and numeric).

pub mod cocycle;
pub mod helicity;
pub mod ruelle;
pub mod wedge;

pub use cocycle::{
    cocycle_integrate, cocycle_integrate_generator, determinant_drift, rotation_per_time,
    CocycleState,
};
pub use helicity::{
    helicity_class_consistency, helicity_tube_wedge, helicity_tube_wedge_tol, ClassConsistency,
    REGRESSION_F1_G1_CLASS00, WEDGE_BRANCH,
};
pub use ruelle::{
    ruelle_convergence_study, ruelle_lipschitz_bound, ruelle_numeric, ruelle_tube_closed,
    ConvergenceStudy, RuelleEstimate,
};
pub use wedge::{d_t, wedge_reduce, Axis, Form, VolumeIntegrand, WedgeTerm};
