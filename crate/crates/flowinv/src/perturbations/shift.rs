//! Ruelle-shift family: perturb the first tube profile by a compactly
//! supported bump and track the exact invariant shift plus the measured
//! helicity response.

use crate::error::{Error, Result};
use crate::invariants::helicity::helicity_tube_wedge_tol;
use crate::model::profile::ScalarProfile1D;
use crate::model::tube::TubeProfile;
use crate::numerics::quad::{quad1d, QuadratureSpec};

/// Requires `f` to be a pure bump-atom profile supported strictly inside
/// `(0, 1)` so compact support holds structurally, not just on a grid.
fn require_interior_bumps(f: &ScalarProfile1D) -> Result<()> {
    if !f.poly_coeffs().iter().all(|&c| c == 0.0) {
        return Err(Error::Domain(
            "shift profile must be bump atoms only (polynomial part present)".into(),
        ));
    }
    if f.atoms().is_empty() && f.sup_bound() != 0.0 {
        return Err(Error::Domain(
            "shift profile must be bump atoms only (trigonometric part present)".into(),
        ));
    }
    for atom in f.atoms() {
        let (lo, hi) = atom.support();
        if lo <= 0.0 || hi >= 1.0 {
            return Err(Error::Domain(format!(
                "shift profile support [{lo}, {hi}] must lie strictly inside (0, 1)"
            )));
        }
    }
    Ok(())
}

/// Returns the tube with `F` replaced by `F + eps * f`; the class start and
/// frame offset are unchanged, so the closed-form invariant moves by exactly
/// `eps * m * int f`.
pub fn ruelle_shift_family(
    tp: &TubeProfile,
    f: &ScalarProfile1D,
    eps: f64,
) -> Result<TubeProfile> {
    require_interior_bumps(f)?;
    Ok(tp.with_f(tp.f().add_scaled(f, eps)?))
}

/// Least-squares response of the wedge helicity to the shift family.
#[derive(Debug, Clone)]
pub struct DeltaHelicityScan {
    pub eps_list: Vec<f64>,
    /// Helicity change with the class start held fixed.
    pub dh_start_fixed: Vec<f64>,
    /// Secondary bookkeeping: class start adjusted so the boundary end stays
    /// fixed instead.
    pub dh_end_fixed: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Independent small-eps finite-difference slope oracle.
    pub fd_oracle_slope: f64,
    /// Closed-form candidate `2 int(fA) - A(1) int(f)` (start fixed).
    pub candidate_start_fixed: f64,
    /// Closed-form candidate `2 int(fA) - A(0) int(f)` (end fixed).
    pub candidate_end_fixed: f64,
    pub nonlinearity_warning: bool,
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let mean = sy / n;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean) * (y - mean)).sum();
    let ss_res: f64 =
        xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    (slope, intercept, r2)
}

pub fn delta_helicity_scan(
    tp: &TubeProfile,
    f: &ScalarProfile1D,
    eps_list: &[f64],
) -> Result<DeltaHelicityScan> {
    delta_helicity_scan_tol(tp, f, eps_list, 1e-12)
}

/// Scans `eps -> H(shifted) - H(base)` over `eps_list`, fits a line, and
/// records two closed-form slope candidates plus a finite-difference oracle.
/// Neither candidate is asserted; the caller compares them. An `R^2` below
/// 0.999 only raises `nonlinearity_warning`.
pub fn delta_helicity_scan_tol(
    tp: &TubeProfile,
    f: &ScalarProfile1D,
    eps_list: &[f64],
    tol: f64,
) -> Result<DeltaHelicityScan> {
    if eps_list.len() < 5 {
        return Err(Error::Domain(format!(
            "delta_helicity_scan: need at least 5 eps values, got {}",
            eps_list.len()
        )));
    }
    let lo = eps_list.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eps_list.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(lo > 0.0) || hi / lo < 10.0 {
        return Err(Error::Domain(format!(
            "delta_helicity_scan: eps values [{lo}, {hi}] must be positive and span a decade"
        )));
    }

    let base = helicity_tube_wedge_tol(tp, tol)?;
    let int_f = f.integral01();
    let (a0, b0) = tp.boundary_start();
    let dh_at = |eps: f64| -> Result<(f64, f64)> {
        let shifted = ruelle_shift_family(tp, f, eps)?;
        let start_fixed = helicity_tube_wedge_tol(&shifted, tol)? - base;
        // Holding the boundary end fixed instead shifts the class start by
        // the change in int F.
        let end_fixed_tube = shifted.with_boundary_start((a0, b0 + eps * int_f));
        let end_fixed = helicity_tube_wedge_tol(&end_fixed_tube, tol)? - base;
        Ok((start_fixed, end_fixed))
    };

    let mut dh_start = Vec::with_capacity(eps_list.len());
    let mut dh_end = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let (s, e) = dh_at(eps)?;
        dh_start.push(s);
        dh_end.push(e);
    }
    let (slope, intercept, r_squared) = linear_fit(eps_list, &dh_start);

    // Finite-difference oracle at two small eps values.
    let (d1, _) = dh_at(1e-4)?;
    let (d2, _) = dh_at(2e-4)?;
    let fd_oracle_slope = (d2 - d1) / 1e-4;

    let a_prof = tp.primitive_a()?;
    let spec = QuadratureSpec::with_tol(tol.min(1e-12));
    let int_fa = quad1d(|t| f.eval(t) * a_prof.eval(t), (0.0, 1.0), spec)?.value;
    let candidate_start_fixed = 2.0 * int_fa - a_prof.eval(1.0) * int_f;
    let candidate_end_fixed = 2.0 * int_fa - a_prof.eval(0.0) * int_f;

    Ok(DeltaHelicityScan {
        eps_list: eps_list.to_vec(),
        dh_start_fixed: dh_start,
        dh_end_fixed: dh_end,
        slope,
        intercept,
        r_squared,
        fd_oracle_slope,
        candidate_start_fixed,
        candidate_end_fixed,
        nonlinearity_warning: r_squared < 0.999,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::ruelle::ruelle_tube_closed;
    use crate::perturbations::l2bump::l2_bump_pair;

    fn base_tube() -> TubeProfile {
        let f = ScalarProfile1D::constant(1.0)
            .add(&ScalarProfile1D::sin_term(1, 0.5).unwrap())
            .unwrap();
        TubeProfile::new(f, ScalarProfile1D::constant(1.0), (0.2, -0.1), (1, 0)).unwrap()
    }

    fn unit_mass_bump() -> ScalarProfile1D {
        let b = crate::model::profile::BumpProfile1D::new(0.5, 0.2, 1.0).unwrap();
        b.to_profile().unwrap().scale(1.0 / b.total_mass())
    }

    #[test]
    fn test_shift_eps_zero_is_identity() {
        let tp = base_tube();
        let f = unit_mass_bump();
        let shifted = ruelle_shift_family(&tp, &f, 0.0).unwrap();
        assert_eq!(shifted.f(), tp.f());
        assert_eq!(shifted.boundary_start(), tp.boundary_start());
    }

    #[test]
    fn test_shift_closed_invariant_moves_by_eps_m_mass() {
        let tp = base_tube();
        let f = unit_mass_bump();
        let base = ruelle_tube_closed(&tp);
        for (m, eps, want) in [(1i64, 0.05, 0.05), (2, 0.05, 0.1), (1, 1e-3, 1e-3)] {
            let tpm = tp.with_frame_offset((m, 0));
            let shifted = ruelle_shift_family(&tpm, &f, eps).unwrap();
            let basem = if m == 1 { base } else { ruelle_tube_closed(&tpm) };
            assert!(
                (ruelle_tube_closed(&shifted) - basem - want).abs() <= 1e-12,
                "m={m} eps={eps}"
            );
        }
    }

    #[test]
    fn test_shift_composes_additively_in_eps() {
        let tp = base_tube();
        let f = unit_mass_bump();
        let twice = ruelle_shift_family(&ruelle_shift_family(&tp, &f, 0.03).unwrap(), &f, 0.04)
            .unwrap();
        let once = ruelle_shift_family(&tp, &f, 0.07).unwrap();
        // Merged bump amplitudes differ by float non-associativity, so compare
        // the profiles pointwise rather than structurally.
        for i in 0..=400 {
            let t = i as f64 / 400.0;
            assert!((twice.f().eval(t) - once.f().eval(t)).abs() <= 1e-12, "t={t}");
        }
    }

    #[test]
    fn test_shift_rejects_non_interior_support() {
        let tp = base_tube();
        let edge = ScalarProfile1D::zero().with_bump(0.05, 0.1, 1.0).unwrap();
        assert!(ruelle_shift_family(&tp, &edge, 0.1).is_err());
        let trig = ScalarProfile1D::sin_term(1, 1.0).unwrap();
        assert!(ruelle_shift_family(&tp, &trig, 0.1).is_err());
    }

    #[test]
    fn test_shift_scan_zero_profile_flat() {
        let tp = base_tube();
        let f = ScalarProfile1D::zero();
        let eps = [1e-3, 3e-3, 1e-2, 3e-2, 1e-1];
        let scan = delta_helicity_scan(&tp, &f, &eps).unwrap();
        assert!(scan.slope.abs() <= 1e-9);
        for dh in &scan.dh_start_fixed {
            assert!(dh.abs() <= 1e-9);
        }
    }

    #[test]
    fn test_shift_scan_l2_bump_matches_fd_oracle() {
        let tp = base_tube();
        let a = tp.primitive_a().unwrap();
        let sol = l2_bump_pair(&a, (0.2, 0.8)).unwrap();
        let eps = [1e-3, 3e-3, 1e-2, 3e-2, 1e-1];
        let scan = delta_helicity_scan(&tp, &sol.f, &eps).unwrap();
        assert!(
            (scan.slope - scan.fd_oracle_slope).abs() <= 1e-6,
            "slope {} vs oracle {}",
            scan.slope,
            scan.fd_oracle_slope
        );
        assert!(scan.r_squared >= 0.999);
        assert!(!scan.nonlinearity_warning);
    }

    #[test]
    fn test_shift_scan_zero_moment_bumps_on_affine_a_zero_slope() {
        // With constant G the primitive A is affine, so a profile whose mass
        // and first moment both vanish makes every slope candidate zero; the
        // symmetric triple (1, -2, 1) achieves both moments exactly.
        let tp = TubeProfile::new(
            ScalarProfile1D::constant(1.0),
            ScalarProfile1D::constant(1.0),
            (0.3, 0.0),
            (1, 0),
        )
        .unwrap();
        let f = ScalarProfile1D::zero()
            .with_bump(0.3, 0.08, 1.0)
            .unwrap()
            .with_bump(0.5, 0.08, -2.0)
            .unwrap()
            .with_bump(0.7, 0.08, 1.0)
            .unwrap();
        let eps = [1e-3, 3e-3, 1e-2, 3e-2, 1e-1];
        let scan = delta_helicity_scan(&tp, &f, &eps).unwrap();
        assert!(scan.candidate_start_fixed.abs() <= 1e-10);
        assert!(scan.candidate_end_fixed.abs() <= 1e-10);
        assert!(scan.slope.abs() <= 1e-9, "slope {}", scan.slope);
    }
}
