//! Adaptive 1D quadrature.

use crate::error::{Error, Result};

/// Tolerance and recursion budget for [`quad1d`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Absolute tolerance on the integral.
    pub tol: f64,
    /// Maximum bisection depth before giving up.
    pub max_depth: u32,
    /// Bisection depth forced before the acceptance test applies; guards
    /// against spurious early termination when symmetric integrands make the
    /// coarse and refined Simpson sums coincide by accident.
    pub min_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { tol: 1e-10, max_depth: 40, min_depth: 6 }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec { tol, ..Self::default() }
    }
}

/// Result of an adaptive quadrature run: the value plus an error estimate and
/// the subinterval that contributed the largest local estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub worst_interval: (f64, f64),
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

struct Adapt<'a> {
    f: &'a dyn Fn(f64) -> f64,
    max_depth: u32,
    min_depth: u32,
    err_sum: f64,
    worst_err: f64,
    worst: (f64, f64),
}

impl<'a> Adapt<'a> {
    fn go(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        // Standard Richardson estimate for composite Simpson.
        let err = (left + right - whole) / 15.0;
        if (depth >= self.min_depth && err.abs() <= tol) || (b - a) < 1e-15 {
            if err.abs() > self.worst_err {
                self.worst_err = err.abs();
                self.worst = (a, b);
            }
            self.err_sum += err.abs();
            return Ok(left + right + err);
        }
        if depth >= self.max_depth {
            return Err(Error::QuadDepth { lo: a, hi: b, err: err.abs(), tol });
        }
        let half = 0.5 * tol;
        Ok(self.go(a, m, fa, flm, fm, left, half, depth + 1)?
            + self.go(m, b, fm, frm, fb, right, half, depth + 1)?)
    }
}

/// Gauss-Legendre nodes and weights on `[a, b]`.
///
/// Nodes are found by Newton iteration on the Legendre recurrence; for smooth
/// integrands the rule is exact on polynomials of degree `2n - 1` and serves
/// as an independent cross-check against the adaptive Simpson route.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and its derivative by the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    (nodes, weights)
}

/// Gauss-Legendre nodes and weights compounded over equal panels of
/// `[a, b]`. A single high-order rule converges poorly on compactly
/// supported bump factors (they are flat to all orders at their support
/// endpoints); panelling restores fast algebraic convergence.
pub fn composite_gauss_legendre(
    nodes: usize,
    panels: usize,
    a: f64,
    b: f64,
) -> (Vec<f64>, Vec<f64>) {
    assert!(panels >= 1, "composite_gauss_legendre needs at least one panel");
    let mut xs = Vec::with_capacity(nodes * panels);
    let mut ws = Vec::with_capacity(nodes * panels);
    let step = (b - a) / panels as f64;
    for i in 0..panels {
        let lo = a + i as f64 * step;
        let (x, w) = gauss_legendre(nodes, lo, lo + step);
        xs.extend(x);
        ws.extend(w);
    }
    (xs, ws)
}

/// Integrates `f` over `[a, b]` with adaptive Simpson bisection.
///
/// Fails with [`Error::QuadDepth`] naming the worst interval when the depth
/// cap is reached before the tolerance is met (e.g. on discontinuous
/// integrands).
pub fn quad1d(f: impl Fn(f64) -> f64, range: (f64, f64), spec: QuadratureSpec) -> Result<QuadResult> {
    let (a, b) = range;
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Domain(format!("quad1d: bad range [{a}, {b}]")));
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let g: &dyn Fn(f64) -> f64 = &f;
    let whole = simpson(a, b, fa, fm, fb);
    let mut st = Adapt {
        f: g,
        max_depth: spec.max_depth.max(spec.min_depth),
        min_depth: spec.min_depth,
        err_sum: 0.0,
        worst_err: 0.0,
        worst: (a, b),
    };
    let value = st.go(a, b, fa, fm, fb, whole, spec.tol, 0)?;
    Ok(QuadResult { value, err_estimate: st.err_sum, worst_interval: st.worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_quad_quad1d_polynomial_exact() {
        let r = quad1d(|t| t * t, (0.0, 1.0), QuadratureSpec::default()).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn test_quad_quad1d_full_sine_period() {
        let r = quad1d(|t| (2.0 * std::f64::consts::PI * t).sin(), (0.0, 1.0), QuadratureSpec::default()).unwrap();
        assert!(r.value.abs() <= 1e-12);
    }

    #[test]
    fn test_quad_composite_gauss_legendre_accuracy() {
        // Flat-endpoint bump: panelled Gauss-Legendre must match the
        // adaptive reference far better than a single high-order rule.
        let bump = |s: f64| if s.abs() >= 1.0 { 0.0 } else { (-1.0 / (1.0 - s * s)).exp() };
        let reference = quad1d(bump, (-1.0, 1.0), QuadratureSpec::with_tol(1e-13)).unwrap().value;
        let (xs, ws) = composite_gauss_legendre(12, 20, -1.0, 1.0);
        let total: f64 = xs.iter().zip(&ws).map(|(&x, &w)| w * bump(x)).sum();
        assert!((total - reference).abs() <= 1e-11, "composite GL off by {:e}", total - reference);
        // Degree 2n - 1 exactness holds per panel.
        let (sx, sw) = composite_gauss_legendre(4, 3, 0.0, 2.0);
        let poly: f64 = sx.iter().zip(&sw).map(|(&x, &w)| w * (x.powi(7) - x)).sum();
        assert!((poly - 30.0).abs() <= 1e-12);
    }

    #[test]
    fn test_quad_quad1d_plateau_no_spurious_termination() {
        // Symmetric plateau with cosine shoulders: the first bisection of
        // [-1, 1] reproduces the coarse Simpson sum exactly (its midpoint
        // values land on cos(pi/3) = 1/2), so without a forced minimum depth
        // the recursion would accept a value off by more than 0.1.
        let plateau = |s: f64| {
            let r = s.abs();
            if r <= 0.3 {
                1.0
            } else if r >= 0.9 {
                0.0
            } else {
                0.5 * (1.0 + (std::f64::consts::PI * (r - 0.3) / 0.6).cos())
            }
        };
        let r = quad1d(plateau, (-1.0, 1.0), QuadratureSpec::with_tol(1e-12)).unwrap();
        assert!((r.value - 1.2).abs() <= 1e-10, "got {}", r.value);
    }

    #[test]
    fn test_quad_quad1d_cubic_single_panel_exact() {
        // Simpson integrates cubics exactly; the adaptive estimate sees zero
        // correction, so the result is exact up to rounding.
        let r = quad1d(|t| 4.0 * t * t * t - 3.0 * t * t + 2.0 * t - 1.0, (0.0, 2.0), QuadratureSpec::default()).unwrap();
        let exact = 16.0 - 8.0 + 4.0 - 2.0;
        assert!((r.value - exact).abs() <= 1e-12);
    }

    #[test]
    fn test_quad_quad1d_discontinuity_reports_worst_interval() {
        let spec = QuadratureSpec { tol: 1e-14, max_depth: 8, ..QuadratureSpec::default() };
        let err = quad1d(|t| if t < 0.371 { 0.0 } else { 1.0 }, (0.0, 1.0), spec).unwrap_err();
        match err {
            Error::QuadDepth { lo, hi, .. } => {
                assert!(lo <= 0.371 && 0.371 <= hi, "worst interval [{lo}, {hi}] must bracket the jump");
            }
            other => panic!("expected QuadDepth, got {other:?}"),
        }
    }

    #[test]
    fn test_quad_quad1d_rejects_bad_range() {
        assert!(quad1d(|t| t, (1.0, 0.0), QuadratureSpec::default()).is_err());
    }

    #[test]
    fn test_quad_gauss_legendre_exact_on_high_degree_polynomials() {
        for n in [2usize, 5, 16] {
            let (xs, ws) = gauss_legendre(n, 0.0, 1.0);
            for k in 0..(2 * n) {
                let approx: f64 =
                    xs.iter().zip(&ws).map(|(&x, &w)| w * x.powi(k as i32)).sum();
                let exact = 1.0 / (k as f64 + 1.0);
                assert!(
                    (approx - exact).abs() <= 1e-13,
                    "n={n} k={k}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn test_quad_gauss_legendre_five_point_golden_nodes() {
        let (xs, ws) = gauss_legendre(5, -1.0, 1.0);
        // Reference values for the five-point rule on [-1, 1].
        assert!((xs[2] - 0.0).abs() <= 1e-15);
        assert!((xs[4] - 0.906_179_845_938_664).abs() <= 1e-12);
        assert!((ws[2] - 128.0 / 225.0).abs() <= 1e-12);
        let total: f64 = ws.iter().sum();
        assert!((total - 2.0).abs() <= 1e-13);
    }
}
