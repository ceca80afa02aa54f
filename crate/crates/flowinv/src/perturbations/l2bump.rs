//! Two-bump solver for the linear constraints `int f = 1`, `int f A = 0`.

use crate::error::{Error, Result};
use crate::model::profile::{BumpProfile1D, ScalarProfile1D};
use crate::numerics::quad::{quad1d, QuadratureSpec};

/// Solution of the two-constraint bump system on a window of `(0, 1)`.
#[derive(Debug, Clone)]
pub struct L2BumpSolution {
    /// `f = c1 * bump1 + c2 * bump2` with the solved amplitudes baked in.
    pub f: ScalarProfile1D,
    pub bumps: (BumpProfile1D, BumpProfile1D),
    pub amplitudes: (f64, f64),
    /// Residual of `int_0^1 f dt - 1`, recomputed by independent quadrature.
    pub residual_mean: f64,
    /// Residual of `int_0^1 f A dt`, recomputed by independent quadrature.
    pub residual_against_a: f64,
    /// 2-norm condition number of the constraint matrix.
    pub condition: f64,
}

const RESIDUAL_TOL: f64 = 1e-10;
const CONDITION_CAP: f64 = 1e12;

fn solve_2x2(m: [[f64; 2]; 2], rhs: [f64; 2]) -> (f64, f64, f64) {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // 2-norm condition number from the two singular values of the 2x2 matrix.
    let frob2 = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
    let disc = (frob2 * frob2 - 4.0 * det * det).max(0.0).sqrt();
    let s_max = ((frob2 + disc) / 2.0).sqrt();
    let s_min = ((frob2 - disc) / 2.0).max(0.0).sqrt();
    let cond = if s_min == 0.0 { f64::INFINITY } else { s_max / s_min };
    let x = (rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det;
    let y = (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det;
    (x, y, cond)
}

/// Places two disjoint bumps inside `(w0, w1)` and solves the 2x2 constraint
/// system `int f = 1`, `int f A = 0`.
///
/// Fails with a singularity error naming the window when the constraint
/// matrix is numerically singular — i.e. when `A` is effectively constant on
/// the window, so the two constraints are linearly dependent.
pub fn l2_bump_pair(a: &ScalarProfile1D, window: (f64, f64)) -> Result<L2BumpSolution> {
    let (w0, w1) = window;
    if !(0.0 < w0 && w0 < w1 && w1 < 1.0) {
        return Err(Error::Domain(format!(
            "l2_bump_pair: window ({w0}, {w1}) must satisfy 0 < w0 < w1 < 1"
        )));
    }
    let width = w1 - w0;
    let halfwidth = 0.2 * width;
    let b1 = BumpProfile1D::new(w0 + 0.25 * width, halfwidth, 1.0)?;
    let b2 = BumpProfile1D::new(w0 + 0.75 * width, halfwidth, 1.0)?;

    let spec = QuadratureSpec::with_tol(1e-13);
    let moment = |b: &BumpProfile1D| -> Result<f64> {
        let (lo, hi) = b.support();
        Ok(quad1d(|t| a.eval(t) * b.eval(t), (lo, hi), spec)?.value)
    };
    // Row one: the mean constraint (exact masses); row two: the A-moment.
    let m = [[b1.total_mass(), b2.total_mass()], [moment(&b1)?, moment(&b2)?]];
    let (c1, c2, cond) = solve_2x2(m, [1.0, 0.0]);
    if !cond.is_finite() || cond > CONDITION_CAP {
        return Err(Error::SingularGram { w0, w1, cond });
    }

    let f = ScalarProfile1D::zero()
        .with_bump(b1.center, b1.halfwidth, c1)?
        .with_bump(b2.center, b2.halfwidth, c2)?;

    // Verify both constraints by quadrature of the composed profile — an
    // independent route from the per-bump moments used in the solve.
    let residual_mean = quad1d(|t| f.eval(t), (w0, w1), spec)?.value - 1.0;
    let residual_against_a = quad1d(|t| f.eval(t) * a.eval(t), (w0, w1), spec)?.value;
    if residual_mean.abs() > RESIDUAL_TOL || residual_against_a.abs() > RESIDUAL_TOL {
        return Err(Error::Construction(format!(
            "l2_bump_pair: residuals ({residual_mean:.3e}, {residual_against_a:.3e}) exceed {RESIDUAL_TOL:.0e}"
        )));
    }
    let bumps = (
        BumpProfile1D::new(b1.center, b1.halfwidth, c1)?,
        BumpProfile1D::new(b2.center, b2.halfwidth, c2)?,
    );
    Ok(L2BumpSolution {
        f,
        bumps,
        amplitudes: (c1, c2),
        residual_mean,
        residual_against_a,
        condition: cond,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_l2bump_linear_a_satisfies_both_constraints() {
        let a = ScalarProfile1D::from_poly(&[0.0, 1.0]).unwrap();
        let sol = l2_bump_pair(&a, (0.2, 0.8)).unwrap();
        assert!(sol.residual_mean.abs() <= 1e-10);
        assert!(sol.residual_against_a.abs() <= 1e-10);
        // Disjoint supports inside the window.
        let (s1, s2) = (sol.bumps.0.support(), sol.bumps.1.support());
        assert!(s1.1 < s2.0);
        assert!(s1.0 > 0.2 && s2.1 < 0.8);
    }

    #[test]
    fn test_l2bump_quadratic_a_residuals() {
        let a = ScalarProfile1D::from_poly(&[0.0, 0.0, 1.0]).unwrap();
        let sol = l2_bump_pair(&a, (0.25, 0.75)).unwrap();
        assert!(sol.residual_mean.abs() <= 1e-10);
        assert!(sol.residual_against_a.abs() <= 1e-10);
    }

    #[test]
    fn test_l2bump_constant_a_reports_singular_window() {
        let a = ScalarProfile1D::constant(2.5);
        let err = l2_bump_pair(&a, (0.3, 0.7)).unwrap_err();
        match err {
            Error::SingularGram { w0, w1, cond } => {
                assert_eq!((w0, w1), (0.3, 0.7));
                assert!(cond > 1e12);
            }
            other => panic!("expected SingularGram, got {other:?}"),
        }
    }

    #[test]
    fn test_l2bump_rejects_bad_window() {
        let a = ScalarProfile1D::from_poly(&[0.0, 1.0]).unwrap();
        assert!(l2_bump_pair(&a, (0.0, 0.5)).is_err());
        assert!(l2_bump_pair(&a, (0.6, 0.4)).is_err());
    }

    #[test]
    fn test_l2bump_solution_profile_matches_bump_sum() {
        let a = ScalarProfile1D::from_poly(&[1.0, -2.0, 0.5]).unwrap();
        let sol = l2_bump_pair(&a, (0.1, 0.9)).unwrap();
        for i in 0..=40 {
            let t = i as f64 / 40.0;
            let direct = sol.bumps.0.eval(t) + sol.bumps.1.eval(t);
            assert!((sol.f.eval(t) - direct).abs() <= 1e-14);
        }
    }
}
