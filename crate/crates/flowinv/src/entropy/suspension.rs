//! Entropy of suspension flows as the pressure root over periodic orbits.
//!
//! For a suspension with roof `r`, the flow entropy is the unique `h` with
//! `pressure(-h r) = 0`. With the roof Birkhoff sums hoisted, each bisection
//! step is a single `log sum exp` pass, so root-finding costs nothing beyond
//! the orbit enumeration.

use crate::entropy::periodic::{periodic_points, PeriodicPointSet};
use crate::entropy::pressure::birkhoff_sums;
use crate::error::{Error, Result};
use crate::model::suspension::CatSuspension;
use crate::model::trig3::TrigPoly2;

/// Final bisection bracket width.
pub const BRACKET_TOL: f64 = 1e-6;

/// Root search interval for the entropy.
const BRACKET: (f64, f64) = (0.0, 3.0);

#[derive(Debug, Clone)]
pub struct EntropyResult {
    pub value: f64,
    pub order: u32,
    /// Final bracket; the pressure changes sign across it.
    pub bracket: (f64, f64),
    pub roof: String,
}

/// `(1/n) log sum_x exp(-h R_x)` for hoisted roof sums `R_x`, allocation-free.
fn pressure_at(roof_sums: &[f64], n: u32, h: f64) -> f64 {
    let m = roof_sums.iter().map(|&s| -h * s).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = roof_sums.iter().map(|&s| (-h * s - m).exp()).sum();
    (m + sum.ln()) / n as f64
}

fn pressure_root(roof_sums: &[f64], n: u32, what: &str) -> Result<(f64, (f64, f64))> {
    let (mut lo, mut hi) = BRACKET;
    if !(pressure_at(roof_sums, n, lo) > 0.0 && pressure_at(roof_sums, n, hi) < 0.0) {
        return Err(Error::NoSignChange { what: what.to_string(), lo, hi });
    }
    while hi - lo > BRACKET_TOL {
        let mid = 0.5 * (lo + hi);
        if pressure_at(roof_sums, n, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), (lo, hi)))
}

/// Human-readable roof descriptor for reports.
fn describe(p: &TrigPoly2) -> String {
    let mut out = String::new();
    for t in p.terms() {
        if t.k == [0, 0] && t.kind == crate::model::trig3::TrigKind::Cos {
            out.push_str(&format!("{:+.6} ", t.amp));
        } else {
            let kind = match t.kind {
                crate::model::trig3::TrigKind::Cos => "cos",
                crate::model::trig3::TrigKind::Sin => "sin",
            };
            out.push_str(&format!("{:+.6}*{kind}[{},{}] ", t.amp, t.k[0], t.k[1]));
        }
    }
    out.trim_end().to_string()
}

/// Entropy of the suspension flow at orbit order `n`.
pub fn entropy_suspension(model: &CatSuspension, n: u32) -> Result<EntropyResult> {
    let pts = periodic_points(*model.mat(), n)?;
    entropy_on(&pts, model)
}

/// Entropy from an already-enumerated point set (orders must match).
pub fn entropy_on(pts: &PeriodicPointSet, model: &CatSuspension) -> Result<EntropyResult> {
    let roof_sums = birkhoff_sums(pts, model.roof());
    let (value, bracket) = pressure_root(&roof_sums, pts.order(), "entropy pressure root")?;
    Ok(EntropyResult { value, order: pts.order(), bracket, roof: describe(model.roof()) })
}

/// True when the roof is exactly the constant 1 (only `k = 0` cosine mass).
pub(crate) fn is_unit_roof(roof: &TrigPoly2) -> bool {
    roof.mean() == 1.0
        && roof
            .terms()
            .iter()
            .all(|t| t.amp == 0.0 || (t.k == [0, 0] && t.kind == crate::model::trig3::TrigKind::Cos))
}

#[derive(Debug, Clone)]
pub struct DerivativeCheck {
    pub order: u32,
    /// Sorted time-change sizes and the entropy of the roof `1 - eps*f` at each.
    pub eps: Vec<f64>,
    pub entropy: Vec<f64>,
    pub base_entropy: f64,
    /// Central difference at 0 from the smallest symmetric pair in the grid.
    pub fd_slope: f64,
    /// First-derivative prediction: base entropy times the mean of `f`.
    pub formula_slope: f64,
    pub slope_gap: f64,
    /// Least-squares `c0 + c1 eps + c2 eps^2` coefficients.
    pub quad: [f64; 3],
    /// Max absolute residual of the quadratic fit.
    pub fit_residual: f64,
}

fn fit_quadratic(xs: &[f64], ys: &[f64]) -> ([f64; 3], f64) {
    let mut s = [0.0f64; 5];
    let mut b = [0.0f64; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let powers = [1.0, x, x * x, x * x * x, x * x * x * x];
        for (si, pi) in s.iter_mut().zip(powers) {
            *si += pi;
        }
        b[0] += y;
        b[1] += y * x;
        b[2] += y * x * x;
    }
    let a = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let det3 = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det3(&a);
    let mut c = [0.0f64; 3];
    for (j, cj) in c.iter_mut().enumerate() {
        let mut aj = a;
        for i in 0..3 {
            aj[i][j] = b[i];
        }
        *cj = det3(&aj) / d;
    }
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (y - (c[0] + c[1] * x + c[2] * x * x)).abs())
        .fold(0.0, f64::max);
    (c, residual)
}

/// Entropy of the time-change family with roof `1 - eps*f` across a grid of
/// `eps`, with the finite-difference slope at 0 compared against the
/// first-derivative prediction (base entropy times the Lebesgue mean of `f`;
/// the maximal-entropy measure of the unit-roof suspension projects to
/// Lebesgue on the base).
pub fn entropy_derivative_check(
    base: &CatSuspension,
    f: &TrigPoly2,
    eps_grid: &[f64],
    n: u32,
) -> Result<DerivativeCheck> {
    if !is_unit_roof(base.roof()) {
        return Err(Error::Domain("derivative check requires the unit roof".into()));
    }
    if eps_grid.is_empty() {
        return Err(Error::Domain("empty eps grid".into()));
    }
    let pts = periodic_points(*base.mat(), n)?;
    let fsums = birkhoff_sums(&pts, f);
    let nn = n as f64;
    let mut eps: Vec<f64> = eps_grid.to_vec();
    eps.sort_by(f64::total_cmp);

    let base_entropy =
        pressure_root(&vec![nn; pts.count()], n, "entropy pressure root")?.0;

    let mut entropy = Vec::with_capacity(eps.len());
    for &e in &eps {
        let roof = TrigPoly2::constant(1.0).add(&f.scale(-e));
        let (min, ok) = roof.positivity_certificate();
        if !ok {
            return Err(Error::Domain(format!(
                "roof 1 - eps*f not certified positive at eps={e} (grid min {min:.3e})"
            )));
        }
        let sums: Vec<f64> = fsums.iter().map(|&s| nn - e * s).collect();
        entropy.push(pressure_root(&sums, n, "entropy pressure root")?.0);
    }

    // Smallest symmetric +/- pair for the central difference at 0.
    let mut pair: Option<(usize, usize)> = None;
    for (i, &ei) in eps.iter().enumerate() {
        if ei <= 0.0 {
            continue;
        }
        if let Some(j) = eps.iter().position(|&ej| (ej + ei).abs() <= 1e-12 * ei.max(1.0)) {
            pair = Some((j, i));
            break; // eps is sorted, so the first hit is the smallest pair
        }
    }
    let (jneg, ipos) = pair.ok_or_else(|| {
        Error::Domain("eps grid has no symmetric +/- pair for the central difference".into())
    })?;
    let fd_slope = (entropy[ipos] - entropy[jneg]) / (eps[ipos] - eps[jneg]);
    let formula_slope = base_entropy * f.mean();
    let (quad, fit_residual) = fit_quadratic(&eps, &entropy);

    Ok(DerivativeCheck {
        order: n,
        eps,
        entropy,
        base_entropy,
        fd_slope,
        formula_slope,
        slope_gap: (fd_slope - formula_slope).abs(),
        quad,
        fit_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::periodic::CAT_MAP;
    use crate::entropy::pressure::pressure_on;

    fn golden() -> f64 {
        ((3.0 + 5f64.sqrt()) / 2.0).ln()
    }

    fn unit_cat() -> CatSuspension {
        CatSuspension::cat(TrigPoly2::constant(1.0)).unwrap()
    }

    fn eps_grid() -> Vec<f64> {
        (-5..=5).map(|i| i as f64 / 100.0).collect()
    }

    #[test]
    fn test_suspension_entropy_unit_roof_matches_golden() {
        let r = entropy_suspension(&unit_cat(), 12).unwrap();
        assert!((r.value - golden()).abs() <= 0.02, "h = {}", r.value);
        assert!(r.value > 0.0);
        assert!(r.bracket.1 - r.bracket.0 <= BRACKET_TOL);
        // The pressure really changes sign across the reported bracket.
        let pts = periodic_points(CAT_MAP, 12).unwrap();
        let roof = TrigPoly2::constant(1.0);
        assert!(pressure_on(&pts, &roof.scale(-r.bracket.0)) > 0.0);
        assert!(pressure_on(&pts, &roof.scale(-r.bracket.1)) < 0.0);
    }

    #[test]
    fn test_suspension_entropy_roof_two_halves() {
        let h1 = entropy_suspension(&unit_cat(), 12).unwrap().value;
        let model2 = unit_cat().with_roof(TrigPoly2::constant(2.0)).unwrap();
        let h2 = entropy_suspension(&model2, 12).unwrap().value;
        assert!((h2 - golden() / 2.0).abs() <= 0.01);
        assert!((h2 - h1 / 2.0).abs() <= 2.0 * BRACKET_TOL);
    }

    #[test]
    fn test_suspension_entropy_abramov_scaling() {
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.1));
        let base = entropy_suspension(&unit_cat().with_roof(roof.clone()).unwrap(), 8)
            .unwrap()
            .value;
        for s in [0.5, 2.0] {
            let scaled = unit_cat().with_roof(roof.scale(s)).unwrap();
            let hs = entropy_suspension(&scaled, 8).unwrap().value;
            assert!((hs - base / s).abs() <= 5e-6, "s={s}: {hs} vs {}", base / s);
        }
    }

    #[test]
    fn test_suspension_entropy_cos_roof_window_and_monotonicity() {
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.1));
        let h = entropy_suspension(&unit_cat().with_roof(roof.clone()).unwrap(), 12)
            .unwrap()
            .value;
        assert!(h > 0.87 && h < 1.07, "h = {h}");
        let up = entropy_suspension(&unit_cat().with_roof(roof.scale(1.1)).unwrap(), 12)
            .unwrap()
            .value;
        assert!(up < h);
    }

    #[test]
    fn test_suspension_entropy_convergence_gap() {
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.1));
        let model = unit_cat().with_roof(roof).unwrap();
        let h10 = entropy_suspension(&model, 10).unwrap().value;
        let h12 = entropy_suspension(&model, 12).unwrap().value;
        assert!((h10 - h12).abs() <= 0.01, "gap {}", (h10 - h12).abs());
    }

    #[test]
    fn test_suspension_entropy_no_sign_change_for_tiny_roof() {
        let model = unit_cat().with_roof(TrigPoly2::constant(0.2)).unwrap();
        assert!(matches!(
            entropy_suspension(&model, 8),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn test_suspension_derivative_check_zero_mean_cos() {
        let f = TrigPoly2::cos([1, 0], 1.0);
        let r = entropy_derivative_check(&unit_cat(), &f, &eps_grid(), 12).unwrap();
        assert!(r.fd_slope.abs() <= 0.02, "slope {}", r.fd_slope);
        assert_eq!(r.formula_slope, 0.0);
        assert!(r.fit_residual <= 1e-3, "residual {}", r.fit_residual);
        assert!((r.base_entropy - golden()).abs() <= 0.02);
        // Mean-zero time changes only move the entropy at second order.
        assert!(r.quad[2] > 0.0, "quad coeff {}", r.quad[2]);
    }

    #[test]
    fn test_suspension_derivative_check_constant_f() {
        let f = TrigPoly2::constant(0.3);
        let r = entropy_derivative_check(&unit_cat(), &f, &eps_grid(), 12).unwrap();
        let want = 0.3 * r.base_entropy;
        assert!((r.fd_slope - want).abs() <= 0.05 * r.base_entropy);
        // Constant time change has the exact closed form h0 / (1 - 0.3 eps),
        // which the pressure root reproduces to bracket accuracy.
        for (e, h) in r.eps.iter().zip(&r.entropy) {
            let exact = r.base_entropy / (1.0 - 0.3 * e);
            assert!((h - exact).abs() <= 2e-6, "eps={e}");
        }
    }

    #[test]
    fn test_suspension_derivative_check_zero_f_is_flat() {
        let f = TrigPoly2::constant(0.0);
        let r = entropy_derivative_check(&unit_cat(), &f, &eps_grid(), 8).unwrap();
        for h in &r.entropy {
            assert!((h - r.base_entropy).abs() <= 2.0 * BRACKET_TOL);
        }
        assert!(r.fd_slope.abs() <= 1e-5);
    }

    #[test]
    fn test_suspension_derivative_check_rejects_bad_inputs() {
        let f = TrigPoly2::constant(0.3);
        let tilted = unit_cat()
            .with_roof(TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.05)))
            .unwrap();
        assert!(entropy_derivative_check(&tilted, &f, &eps_grid(), 8).is_err());
        // Roof positivity violated at eps = 4.
        assert!(entropy_derivative_check(&unit_cat(), &f, &[-4.0, 0.0, 4.0], 8).is_err());
        // No symmetric pair around 0.
        assert!(entropy_derivative_check(&unit_cat(), &f, &[0.01, 0.02, 0.03], 8).is_err());
    }
}
