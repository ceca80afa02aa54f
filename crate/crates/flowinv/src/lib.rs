//! Numerical invariants and certified perturbation constructions for
//! volume-preserving 3D flows on model geometries.
//!
//! The crate computes and cross-validates:
//!
//! - **helicity** of toric flow tubes, both through symbolic wedge reduction
//!   of `alpha ^ i_X mu` and through closed-form boundary-class identities;
//! - the **Ruelle rotation invariant**, closed-form and through SL(2)-cocycle
//!   integration with angle unwrapping, with fitted convergence bounds;
//! - **topological entropy** of suspensions over hyperbolic toral
//!   automorphisms, via periodic-orbit pressure root finding, together with
//!   first/second-order response checks and a variance estimator;
//! - the local functionals built from **hyperbolic zeros** (sum of squared
//!   eigenvalue real parts) and **shortest periodic orbits** (certified
//!   minimum roof period);
//! - explicit, quantitatively certified **perturbation fields**: an L^2 bump
//!   pair solver, the Ruelle shift family, a helicity corrector, a lift-axiom
//!   steering field, and a Franks-type local field with measured mollifier
//!   constants.
//!
//! Heavy grids parallelize through [`parallel`] (rayon behind the default
//! `parallel` feature, with a sequential fallback that produces bit-identical
//! results). The `flowinv` binary (see [`cli`]) drives everything from model
//! files and emits deterministic JSON/CSV reports via [`report`] and
//! [`suites`].

pub mod cli;
pub mod entropy;
pub mod error;
pub mod invariants;
pub mod local_functionals;
pub mod model;
pub mod numerics;
pub mod parallel;
pub mod perturbations;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
