//! SL(2) cocycles over tube orbits and rotation-number extraction.
//!
//! Matrices act on the quotient of the tangent space by the flow direction,
//! written in the basis `([d/dx], [d/dt])` (requires `G > 0` to express
//! `[d/dy] = -(F/G) [d/dx]`). In this basis the linearized return map of the
//! tube flow is the exact upper-triangular shear
//!
//! ```text
//!     Phi_std(T) = [[1, c T], [0, 1]],    c = F' - G' F / G  (frozen at t0),
//! ```
//!
//! and the frame trivialization rotates by `2 pi (m x + n y)` radians, so the
//! full cocycle is the exact conjugated product
//! `Phi(T, z) = Psi(flow_T z) * Phi_std(T) * Psi(z)^{-1}`.
//!
//! The tracked vector starts at `(1, 0)` (the `[d/dx]` direction, invariant
//! under the pure shear); its `atan2` angle is unwrapped continuously with a
//! per-step increment bound of `pi/2`, auto-refining the step count when the
//! bound is violated.

use crate::error::{Error, Result};
use crate::model::tube::TubeProfile;

/// One sample of an integrated cocycle path.
#[derive(Debug, Clone, Copy)]
pub struct CocycleState {
    /// Cocycle matrix at this time (unit determinant up to renormalization).
    pub matrix: [[f64; 2]; 2],
    /// Continuously unwrapped angle of the tracked vector, in radians.
    pub angle_unwrapped: f64,
    /// Flow time of this sample.
    pub time: f64,
}

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn mul2(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn rot(theta: f64) -> [[f64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [[c, -s], [s, c]]
}

/// Renormalizes to unit determinant, returning the drift `|det - 1|`.
fn renormalize(m: &mut [[f64; 2]; 2]) -> f64 {
    let d = det2(m);
    let drift = (d - 1.0).abs();
    if d > 0.0 {
        let s = d.sqrt();
        for row in m.iter_mut() {
            row[0] /= s;
            row[1] /= s;
        }
    }
    drift
}

/// Unwraps the tracked-vector angles for a sequence of matrices applied to
/// `(1, 0)`; fails if any step rotates by `pi/2` or more.
fn unwrap_angles(mats: &[[[f64; 2]; 2]], times: &[f64]) -> Result<Vec<CocycleState>> {
    let mut path = Vec::with_capacity(mats.len());
    let mut prev_angle = 0.0f64;
    let mut prev_raw = 0.0f64;
    for (k, (m, &time)) in mats.iter().zip(times).enumerate() {
        let v = [m[0][0], m[1][0]]; // column image of (1, 0)
        let raw = v[1].atan2(v[0]);
        let angle = if k == 0 {
            raw
        } else {
            let mut delta = raw - prev_raw;
            delta -= std::f64::consts::TAU * (delta / std::f64::consts::TAU).round();
            if delta.abs() >= std::f64::consts::FRAC_PI_2 {
                return Err(Error::Unwrap { step: k, delta });
            }
            prev_angle + delta
        };
        path.push(CocycleState { matrix: *m, angle_unwrapped: angle, time });
        prev_angle = angle;
        prev_raw = raw;
    }
    Ok(path)
}

const MAX_REFINE: u32 = 16;

/// Exact tube cocycle along the orbit of `start = (t, x, y)`, sampled on
/// `steps` uniform time intervals (auto-refined when the per-step angle
/// increment bound fails).
pub fn cocycle_integrate(
    tp: &TubeProfile,
    start: (f64, f64, f64),
    horizon: f64,
    steps: usize,
) -> Result<Vec<CocycleState>> {
    if !(horizon > 0.0) || steps == 0 {
        return Err(Error::Domain(format!(
            "cocycle_integrate: horizon {horizon} and steps {steps} must be positive"
        )));
    }
    let (t0, x0, y0) = start;
    let f0 = tp.f().eval(t0);
    let g0 = tp.g().eval(t0);
    let fp = tp.f().derivative()?.eval(t0);
    let gp = tp.g().derivative()?.eval(t0);
    if g0 <= 0.0 {
        return Err(Error::Domain(format!("cocycle_integrate: G({t0}) = {g0} must be positive")));
    }
    let shear_rate = fp - gp * f0 / g0;
    let (m, n) = tp.frame_offset();
    let (mf, nf) = (m as f64, n as f64);
    let tau = std::f64::consts::TAU;
    let theta0 = tau * (mf * x0 + nf * y0);
    let rot_rate = tau * (mf * f0 + nf * g0);

    let mut n_steps = steps;
    for refine in 0..=MAX_REFINE {
        let mut mats = Vec::with_capacity(n_steps + 1);
        let mut times = Vec::with_capacity(n_steps + 1);
        let psi0_inv = rot(-theta0);
        let mut max_drift = 0.0f64;
        for k in 0..=n_steps {
            let s = horizon * k as f64 / n_steps as f64;
            let shear = [[1.0, shear_rate * s], [0.0, 1.0]];
            let psi_t = rot(theta0 + rot_rate * s);
            let mut phi = mul2(&psi_t, &mul2(&shear, &psi0_inv));
            max_drift = max_drift.max(renormalize(&mut phi));
            mats.push(phi);
            times.push(s);
        }
        debug_assert!(max_drift <= 1e-8, "closed-form cocycle drift {max_drift}");
        match unwrap_angles(&mats, &times) {
            Ok(path) => return Ok(path),
            Err(Error::Unwrap { step, delta }) if refine < MAX_REFINE => {
                let _ = (step, delta);
                n_steps *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("refinement loop always returns");
}

/// General-linearization route: integrates `dM/dt = a(t) M` by fixed-step
/// RK4 from the identity, renormalizing the determinant each step.
pub fn cocycle_integrate_generator(
    generator: impl Fn(f64) -> [[f64; 2]; 2],
    horizon: f64,
    steps: usize,
) -> Result<Vec<CocycleState>> {
    if !(horizon > 0.0) || steps == 0 {
        return Err(Error::Domain(format!(
            "cocycle_integrate_generator: horizon {horizon} and steps {steps} must be positive"
        )));
    }
    let mut n_steps = steps;
    'refine: for refine in 0..=MAX_REFINE {
        let h = horizon / n_steps as f64;
        let deriv = |t: f64, m: &[[f64; 2]; 2]| mul2(&generator(t), m);
        let mut mats = Vec::with_capacity(n_steps + 1);
        let mut times = Vec::with_capacity(n_steps + 1);
        let mut m = [[1.0, 0.0], [0.0, 1.0]];
        mats.push(m);
        times.push(0.0);
        for k in 0..n_steps {
            let t = k as f64 * h;
            let k1 = deriv(t, &m);
            let add = |a: &[[f64; 2]; 2], b: &[[f64; 2]; 2], w: f64| {
                let mut out = *a;
                for i in 0..2 {
                    for j in 0..2 {
                        out[i][j] += w * b[i][j];
                    }
                }
                out
            };
            let k2 = deriv(t + 0.5 * h, &add(&m, &k1, 0.5 * h));
            let k3 = deriv(t + 0.5 * h, &add(&m, &k2, 0.5 * h));
            let k4 = deriv(t + h, &add(&m, &k3, h));
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] += h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
                }
            }
            let drift = renormalize(&mut m);
            if drift > 1e-8 {
                if refine < MAX_REFINE {
                    n_steps *= 2;
                    continue 'refine;
                }
                return Err(Error::Construction(format!(
                    "cocycle determinant drift {drift:.3e} exceeds 1e-8 at refinement cap"
                )));
            }
            mats.push(m);
            times.push(t + h);
        }
        match unwrap_angles(&mats, &times) {
            Ok(path) => return Ok(path),
            Err(Error::Unwrap { .. }) if refine < MAX_REFINE => {
                n_steps *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("refinement loop always returns");
}

/// Final unwrapped angle divided by `2 pi T`: turns per unit time.
pub fn rotation_per_time(path: &[CocycleState]) -> Result<f64> {
    let last = path.last().ok_or_else(|| Error::Domain("rotation_per_time: empty path".into()))?;
    if !(last.time > 0.0) {
        return Err(Error::Domain("rotation_per_time: path spans zero time".into()));
    }
    Ok(last.angle_unwrapped / (std::f64::consts::TAU * last.time))
}

/// Maximum `|det - 1|` over a path (drift measured before renormalization is
/// already folded in; this reports the stored matrices).
pub fn determinant_drift(path: &[CocycleState]) -> f64 {
    path.iter().map(|s| (det2(&s.matrix) - 1.0).abs()).fold(0.0, f64::max)
}
