//! Topological pressure over periodic orbits.

use crate::entropy::periodic::{periodic_points, IntMat2, PeriodicPointSet};
use crate::error::Result;
use crate::model::trig3::TrigPoly2;
use crate::parallel;

/// `log sum exp` with max-shift; `-inf` on an empty slice.
pub fn logsumexp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + xs.iter().map(|&x| (x - m).exp()).sum::<f64>().ln()
}

/// Birkhoff sums `sum_{k<n} phi(M^k x)` over every enumerated fixed point of
/// `M^n`, in enumeration order. Orbit iteration is exact numerator
/// arithmetic; only the evaluation of `phi` rounds.
pub fn birkhoff_sums(pts: &PeriodicPointSet, phi: &TrigPoly2) -> Vec<f64> {
    let n = pts.order();
    parallel::map_indexed(pts.count(), |i| {
        let mut p = pts.points()[i];
        let mut s = 0.0;
        for _ in 0..n {
            let q = pts.point_f64(p);
            s += phi.eval(q[0], q[1]);
            p = pts.step(p);
        }
        s
    })
}

/// Pressure estimate `(1/n) log sum_x exp(S_n phi(x))` over `Fix(M^n)`.
pub fn pressure_on(pts: &PeriodicPointSet, phi: &TrigPoly2) -> f64 {
    logsumexp(&birkhoff_sums(pts, phi)) / pts.order() as f64
}

/// Convenience wrapper that enumerates the periodic points first.
pub fn pressure(mat: IntMat2, phi: &TrigPoly2, n: u32) -> Result<f64> {
    Ok(pressure_on(&periodic_points(mat, n)?, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::periodic::CAT_MAP;

    #[test]
    fn test_pressure_logsumexp_handles_extremes() {
        assert!((logsumexp(&[0.0, 0.0]) - 2f64.ln()).abs() <= 1e-15);
        assert!((logsumexp(&[1000.0, 1000.0]) - (1000.0 + 2f64.ln())).abs() <= 1e-12);
        assert_eq!(logsumexp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn test_pressure_zero_potential_matches_growth_rate() {
        let ln_lambda_sq = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        let p = pressure(CAT_MAP, &TrigPoly2::constant(0.0), 12).unwrap();
        assert!((p - ln_lambda_sq).abs() <= 0.02, "pressure {p} vs {ln_lambda_sq}");
    }

    #[test]
    fn test_pressure_constant_shift_exact() {
        let pts = periodic_points(CAT_MAP, 8).unwrap();
        let phi = TrigPoly2::cos([1, 0], 0.4).add(&TrigPoly2::sin([1, -2], 0.25));
        let base = pressure_on(&pts, &phi);
        for c in [0.5, -1.25, 3.0] {
            let shifted = pressure_on(&pts, &phi.add(&TrigPoly2::constant(c)));
            assert!((shifted - base - c).abs() <= 1e-12, "c={c}");
        }
    }

    #[test]
    fn test_pressure_normalized_potential_near_zero() {
        let ln_lambda_sq = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        let p = pressure(CAT_MAP, &TrigPoly2::constant(-ln_lambda_sq), 12).unwrap();
        assert!(p.abs() <= 0.02);
    }
}
