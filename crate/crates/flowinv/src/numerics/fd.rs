//! Central finite differences.

use crate::error::{Error, Result};

pub const FD_STEP_MIN: f64 = 1e-6;
pub const FD_STEP_MAX: f64 = 1e-3;
pub const FD_STEP_DEFAULT: f64 = 1e-4;

/// Central-difference Jacobian of a 3-component field at `point`.
///
/// `h` must lie in `[1e-6, 1e-3]`; pass `None` for the default `1e-4`.
/// Row `i`, column `j` is `d field_i / d x_j`.
pub fn jacobian_fd(
    field: impl Fn([f64; 3]) -> [f64; 3],
    point: [f64; 3],
    h: Option<f64>,
) -> Result<[[f64; 3]; 3]> {
    let h = h.unwrap_or(FD_STEP_DEFAULT);
    if !(FD_STEP_MIN..=FD_STEP_MAX).contains(&h) {
        return Err(Error::Domain(format!(
            "jacobian_fd: step {h:e} outside [{FD_STEP_MIN:e}, {FD_STEP_MAX:e}]"
        )));
    }
    let mut jac = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut plus = point;
        let mut minus = point;
        plus[j] += h;
        minus[j] -= h;
        let fp = field(plus);
        let fm = field(minus);
        for i in 0..3 {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Central-difference gradient of a scalar function of 3 variables.
pub fn gradient_fd(f: impl Fn([f64; 3]) -> f64, point: [f64; 3], h: f64) -> [f64; 3] {
    let mut g = [0.0; 3];
    for j in 0..3 {
        let mut plus = point;
        let mut minus = point;
        plus[j] += h;
        minus[j] -= h;
        g[j] = (f(plus) - f(minus)) / (2.0 * h);
    }
    g
}

/// Fourth-order central first derivative on a five-point stencil. Preferred
/// over the second-order stencil when validating bump-type profiles, whose
/// large third derivatives defeat an `O(h^2)` truncation at any usable step.
pub fn d1_fd4(g: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (g(x - 2.0 * h) - 8.0 * g(x - h) + 8.0 * g(x + h) - g(x + 2.0 * h)) / (12.0 * h)
}
