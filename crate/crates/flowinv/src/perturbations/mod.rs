//! Certified perturbation constructions: fields built to order alongside
//! quantitative certificates for every claimed property.

pub mod certify;
pub mod corrector;
pub mod franks;
pub mod l2bump;
pub mod lift;
pub mod mollifier;
pub mod shift;

pub use certify::{CertifiedField, Clause};
pub use corrector::{helicity_corrector, CorrectorSpec};
pub use franks::{franks_kappa_halving, franks_local_field, FranksInput, KappaHalving};
pub use l2bump::{l2_bump_pair, L2BumpSolution};
pub use lift::{lift_axiom_field, lift_draws};
pub use mollifier::{
    franks_mollifier, franks_mollifier_spline, Mollifier, MollifierKind, REFERENCE_TARGETS,
};
pub use shift::{
    delta_helicity_scan, delta_helicity_scan_tol, ruelle_shift_family, DeltaHelicityScan,
};
