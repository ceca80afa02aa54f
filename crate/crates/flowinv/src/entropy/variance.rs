//! Monte Carlo estimate of the dynamical variance of a base observable
//! along the unit-roof suspension flow.
//!
//! With a unit roof and a fiber-constant observable, the flow autocorrelation
//! at lag `t` is the piecewise-linear interpolation of the integer-lag map
//! autocovariances (the base point advances by `floor(s + t)` steps, and the
//! fiber coordinate `s` integrates out exactly). The symmetric lag integral
//! therefore reduces to a trapezoidal sum of map autocovariances, which are
//! estimated along orbits from seeded uniform starts.
//!
//! Orbits are iterated in exact dyadic arithmetic (numerators mod `2^62`), so
//! sample paths cannot drift: the base map's expansion amplifies float
//! round-off past unity within ~40 steps, while the dyadic lattice is exactly
//! invariant and its orbit periods far exceed every window used here.

use crate::entropy::suspension::is_unit_roof;
use crate::error::{Error, Result};
use crate::model::suspension::CatSuspension;
use crate::parallel;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Samples per orbit used for each autocovariance estimate.
const ORBIT_LEN: usize = 4096;

const DENOM_BITS: u32 = 62;
const DENOM: i128 = 1 << DENOM_BITS;

#[derive(Debug, Clone, Copy)]
pub struct VarianceEstimate {
    /// Mean of the per-start truncated lag integrals.
    pub value: f64,
    /// Standard error of that mean across starts.
    pub std_error: f64,
    pub lag_max: u32,
    pub sample_count: u32,
    pub orbit_len: usize,
}

/// Truncated symmetric lag integral of the autocorrelation of `f - f_mean`
/// along suspension orbits. `f_mean` must be the Lebesgue mean of `f`;
/// centering against the exact mean keeps the autocovariances unbiased.
pub fn variance_estimate<F>(
    model: &CatSuspension,
    f: &F,
    f_mean: f64,
    lag_max: u32,
    sample_count: u32,
    seed: u64,
) -> Result<VarianceEstimate>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if !is_unit_roof(model.roof()) {
        return Err(Error::Domain("variance estimate requires the unit roof".into()));
    }
    if lag_max == 0 || sample_count < 2 {
        return Err(Error::Domain(
            "variance estimate needs lag_max >= 1 and sample_count >= 2".into(),
        ));
    }
    let k = lag_max as usize;
    let mat = *model.mat();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<[u64; 2]> = (0..sample_count)
        .map(|_| [rng.next_u64() >> 2, rng.next_u64() >> 2])
        .collect();

    let per_start: Vec<f64> = parallel::map_indexed(sample_count as usize, |i| {
        let mut p = [starts[i][0] as i128, starts[i][1] as i128];
        let mut g = Vec::with_capacity(ORBIT_LEN + k);
        for _ in 0..ORBIT_LEN + k {
            let x = p[0] as f64 / DENOM as f64;
            let y = p[1] as f64 / DENOM as f64;
            g.push(f(x, y) - f_mean);
            p = [
                (mat[0][0] as i128 * p[0] + mat[0][1] as i128 * p[1]).rem_euclid(DENOM),
                (mat[1][0] as i128 * p[0] + mat[1][1] as i128 * p[1]).rem_euclid(DENOM),
            ];
        }
        let cov = |lag: usize| -> f64 {
            let mut s = 0.0;
            for j in 0..ORBIT_LEN {
                s += g[j] * g[j + lag];
            }
            s / ORBIT_LEN as f64
        };
        // Trapezoid over lags -K..K of the tent-interpolated autocorrelation.
        let mut total = cov(0) + cov(k);
        for lag in 1..k {
            total += 2.0 * cov(lag);
        }
        total
    });

    let n = sample_count as f64;
    let value = per_start.iter().sum::<f64>() / n;
    let var = per_start.iter().map(|v| (v - value) * (v - value)).sum::<f64>() / (n - 1.0);
    Ok(VarianceEstimate {
        value,
        std_error: (var / n).sqrt(),
        lag_max,
        sample_count,
        orbit_len: ORBIT_LEN,
    })
}

/// Product bump on the 2-torus centered at the origin: equals 1 on the
/// fixed-point orbit, vanishes outside the `halfwidth` box. Distinguishes
/// Lebesgue measure from the orbit measure at the origin.
pub fn origin_bump(halfwidth: f64) -> impl Fn(f64, f64) -> f64 + Sync {
    move |x: f64, y: f64| {
        let b = |s: f64| {
            let d = (s - s.round()) / halfwidth;
            if d.abs() >= 1.0 {
                0.0
            } else {
                (1.0 - 1.0 / (1.0 - d * d)).exp()
            }
        };
        b(x) * b(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::trig3::TrigPoly2;
    use crate::numerics::quad::{quad1d, QuadratureSpec};

    fn unit_cat() -> CatSuspension {
        CatSuspension::cat(TrigPoly2::constant(1.0)).unwrap()
    }

    #[test]
    fn test_variance_zero_function_is_zero() {
        let r = variance_estimate(&unit_cat(), &|_, _| 0.0, 0.0, 8, 8, 3).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.std_error, 0.0);
    }

    #[test]
    fn test_variance_cos_matches_character_orthogonality() {
        // cos(2 pi x) composed with powers of the cat map stays a nontrivial
        // character, so every nonzero-lag covariance vanishes and the lag
        // integral collapses to Var(cos) = 1/2.
        let tau = std::f64::consts::TAU;
        let f = move |x: f64, _: f64| (tau * x).cos();
        let r = variance_estimate(&unit_cat(), &f, 0.0, 8, 64, 1).unwrap();
        assert!(r.value >= -2.0 * r.std_error);
        assert!((r.value - 0.5).abs() <= 0.05, "value {} se {}", r.value, r.std_error);
    }

    #[test]
    fn test_variance_origin_bump_positive_at_three_se() {
        let halfwidth = 0.25;
        let bump = origin_bump(halfwidth);
        let mass = quad1d(
            |s: f64| bump(s, 0.0_f64),
            (-halfwidth, halfwidth),
            QuadratureSpec::with_tol(1e-12),
        )
        .unwrap()
        .value;
        // Product structure: the 2D mean is the square of the 1D line mass
        // through the origin (where the transverse factor equals 1).
        let mean = mass * mass;
        let r = variance_estimate(&unit_cat(), &bump, mean, 8, 64, 2).unwrap();
        assert!(r.value > 3.0 * r.std_error, "value {} se {}", r.value, r.std_error);
    }

    #[test]
    fn test_variance_deterministic_under_seed() {
        let tau = std::f64::consts::TAU;
        let f = move |x: f64, y: f64| (tau * (x + y)).cos();
        let a = variance_estimate(&unit_cat(), &f, 0.0, 6, 16, 42).unwrap();
        let b = variance_estimate(&unit_cat(), &f, 0.0, 6, 16, 42).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.std_error, b.std_error);
        let c = variance_estimate(&unit_cat(), &f, 0.0, 6, 16, 43).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn test_variance_rejects_bad_inputs() {
        let tilted = unit_cat()
            .with_roof(TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.05)))
            .unwrap();
        assert!(variance_estimate(&tilted, &|_, _| 0.0, 0.0, 8, 8, 0).is_err());
        assert!(variance_estimate(&unit_cat(), &|_, _| 0.0, 0.0, 0, 8, 0).is_err());
        assert!(variance_estimate(&unit_cat(), &|_, _| 0.0, 0.0, 8, 1, 0).is_err());
    }
}
