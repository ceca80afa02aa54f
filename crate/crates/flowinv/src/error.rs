//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Result`]. Variants carry
//! enough context (offending key, window, best candidate so far) for a caller
//! to report the failure without re-deriving it.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A profile construction or calculus step left the supported basis
    /// (polynomial degree or trigonometric harmonic cap exceeded).
    #[error("basis overflow: {0}")]
    BasisOverflow(String),

    /// A model-file field failed validation; `path` is the JSON path.
    #[error("model file error at {path}: {message}")]
    ModelFile { path: String, message: String },

    /// A positivity or domain precondition failed.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature hit the recursion depth cap before reaching the
    /// requested tolerance; carries the worst interval.
    #[error("quadrature depth exhausted on [{lo}, {hi}] (err {err:.3e}, tol {tol:.3e})")]
    QuadDepth { lo: f64, hi: f64, err: f64, tol: f64 },

    /// Angle tracking could not keep per-step increments under the unwrap
    /// safety bound even after refinement.
    #[error("angle unwrap violation: step {step} rotated by {delta:.3} rad at refinement cap")]
    Unwrap { step: usize, delta: f64 },

    /// The 2x2 constraint system for the bump pair is numerically singular.
    #[error("singular constraint system on window [{w0}, {w1}] (cond {cond:.3e})")]
    SingularGram { w0: f64, w1: f64, cond: f64 },

    /// A perturbation construction violated one of its own preconditions.
    #[error("construction error: {0}")]
    Construction(String),

    /// Periodic-point enumeration would exceed the count cap.
    #[error("periodic point count {count} exceeds cap {cap} at order {order}")]
    CountCap { order: u32, count: u64, cap: u64 },

    /// Root bracketing failed: no sign change over the search interval.
    #[error("no sign change for {what} over [{lo}, {hi}]")]
    NoSignChange { what: String, lo: f64, hi: f64 },

    /// Orbit enumeration ended before the pruning bound certified the
    /// minimum; `best` is the smallest period found so far.
    #[error("min-period search uncertified at order {order_reached}: best candidate {best}")]
    MinPeriodIncomplete { best: f64, order_reached: u32 },

    /// A requested functional needs hyperbolic zeros but a flagged
    /// non-hyperbolic zero is present.
    #[error("non-hyperbolic zero at {location:?} (min |Re| = {min_re:.3e})")]
    NonHyperbolic { location: [f64; 3], min_re: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
