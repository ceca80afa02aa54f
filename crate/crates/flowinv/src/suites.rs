//! Named experiment suites behind the CLI.
//!
//! Each entry point assembles a deterministic [`RunReport`] plus any CSV
//! series, with every measurement gated at its contract tolerance. All
//! randomness flows from the single seed in [`SuiteOpts`]; everything else is
//! fixed closed-form input, so reruns with the same seed are byte-identical.

use std::path::Path;

use crate::entropy::{
    entropy_derivative_check, entropy_suspension, origin_bump, periodic,
    periodic_points, variance_estimate, BRACKET_TOL, CAT_MAP,
};
use crate::error::{Error, Result};
use crate::invariants::{
    helicity_class_consistency, helicity_tube_wedge, ruelle_convergence_study, ruelle_numeric,
    ruelle_tube_closed, WEDGE_BRANCH,
};
use crate::local_functionals::{find_zeros, min_period, s_functional};
use crate::model::{
    parse_model_file, CatSuspension, FlowBoxField, ModelFile, ScalarProfile1D, TrigField3T,
    TrigPoly2, TubeProfile,
};
use crate::numerics::quad::{quad1d, QuadratureSpec};
use crate::perturbations::{
    delta_helicity_scan, franks_kappa_halving, franks_local_field, lift_axiom_field, lift_draws,
    ruelle_shift_family, CertifiedField, FranksInput,
};
use crate::report::{csv_string, input_digest, Block, RunReport};

/// Flags shared by all commands; every field has a contract default.
#[derive(Debug, Clone)]
pub struct SuiteOpts {
    pub seed: u64,
    /// Periodic-point order for entropy computations.
    pub order: u32,
    /// Ruelle integration horizon; the convergence study uses
    /// `{T/8, T/4, T/2, T}`, so this must be at least 80.
    pub horizon: f64,
    /// Tolerance for the numeric-vs-closed Ruelle gate.
    pub tol: f64,
    /// Shift-family eps values; defaults to a decade sweep.
    pub eps_list: Option<Vec<f64>>,
}

impl Default for SuiteOpts {
    fn default() -> Self {
        SuiteOpts { seed: 0, order: 12, horizon: 200.0, tol: 0.01, eps_list: None }
    }
}

/// A finished run: the report plus CSV series as `(relative path, contents)`.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: RunReport,
    pub series: Vec<(String, String)>,
}

pub const SUITE_NAMES: [&str; 6] = ["ruelle-shift", "franks", "lift", "entropy", "localfn", "all"];

const RUELLE_GRID: (usize, usize, usize) = (64, 8, 8);

fn quad_tol(tol: f64) -> QuadratureSpec {
    QuadratureSpec { tol, ..QuadratureSpec::default() }
}

/// Maps a certificate clause onto a report block; clause names listed in
/// `informative` were recorded without a pass requirement and keep that
/// status in the report.
fn block_from_clause(
    prefix: &str,
    clause: &crate::perturbations::Clause,
    informative: &[&str],
) -> Block {
    let name = format!("{prefix}{}", clause.name);
    if informative.contains(&clause.name.as_str()) {
        Block::info(&name, clause.measured).with_expected("reference", clause.bound)
    } else {
        let mut b = Block::gate(&name, clause.measured, clause.bound);
        if !clause.pass {
            // A clause can fail for non-order reasons (non-finite values);
            // keep the certificate's own verdict authoritative.
            b.pass = crate::report::Pass::False;
        }
        b
    }
}

fn certificate_blocks(prefix: &str, cf: &CertifiedField, informative: &[&str]) -> Vec<Block> {
    let mut blocks = Vec::with_capacity(cf.clauses.len());
    for clause in &cf.clauses {
        let mut b = block_from_clause(prefix, clause, informative);
        for (k, v) in &cf.inputs {
            b = b.with_input(k, v);
        }
        blocks.push(b);
    }
    blocks
}

/// Computes helicity (wedge plus class consistency) and the Ruelle invariant
/// (closed form, numeric estimate, convergence study) on a toric-tube model
/// file. Returns a usage error for any other model kind.
pub fn cmd_invariants(model_path: &Path, command: &str, opts: &SuiteOpts) -> Result<RunOutput> {
    let model = parse_model_file(model_path)?;
    let ModelFile::Tube(tube) = &model else {
        return Err(Error::ModelFile {
            path: model_path.display().to_string(),
            message: format!("invariants requires a toric_tube model, got {}", model.kind()),
        });
    };
    if !(opts.horizon >= 80.0) {
        return Err(Error::Domain(format!(
            "invariants horizon {} must be at least 80 (convergence study runs T/8..T)",
            opts.horizon
        )));
    }
    let digest = input_digest(Some(model_path), "")?;
    let mut report = RunReport::new(command, &digest, opts.seed);

    // Integration-by-parts identity behind the wedge reduction, measured
    // directly from the primitives.
    let a = tube.primitive_a()?;
    let b = tube.primitive_b()?;
    let (a0, b0) = tube.boundary_start();
    let (c, d) = tube.boundary_end()?;
    let g = tube.g().clone();
    let f = tube.f().clone();
    let int_bg = quad1d(|t| b.eval(t) * g.eval(t), (0.0, 1.0), quad_tol(1e-12))?.value;
    let int_af = quad1d(|t| a.eval(t) * f.eval(t), (0.0, 1.0), quad_tol(1e-12))?.value;
    let residual = (int_bg - (c * d - a0 * b0) - int_af).abs();
    report.push(Block::gate("parts_identity", residual, 1e-9));

    let h = helicity_tube_wedge(tube)?;
    report.push(Block::info("helicity_wedge", h).with_input("branch", WEDGE_BRANCH));

    let cc = helicity_class_consistency(tube)?;
    report.push(Block::gate("class_vector_residual", cc.class_vector_residual, 1e-9));
    report.push(Block::gate("exact_form_delta", cc.exact_form_delta, 1e-9));
    report.push(Block::gate("zero_shift_delta", cc.zero_shift_delta, 1e-9));
    report.push(
        Block::gate_eq(
            "class_dependence",
            cc.class_dependence_measured,
            cc.class_dependence_predicted,
            1e-9,
        )
        .with_input("note", cc.integration_variable_note),
    );

    let closed = ruelle_tube_closed(tube);
    report.push(Block::info("ruelle_closed", closed));

    let est = ruelle_numeric(tube, opts.horizon, RUELLE_GRID)?;
    report.push(
        Block::gate_eq("ruelle_numeric", est.value, closed, opts.tol)
            .with_input("horizon", opts.horizon)
            .with_input("grid", format!("{:?}", est.grid))
            .with_measured("c_fit", est.c_fit)
            .with_measured("error_bound", est.error_bound),
    );

    let horizons: Vec<f64> = [8.0, 4.0, 2.0, 1.0].iter().map(|d| opts.horizon / d).collect();
    let study = ruelle_convergence_study(tube, &horizons, RUELLE_GRID)?;
    report.push(
        Block::gate("ruelle_convergence_slope", study.loglog_slope, -0.9)
            .with_input("horizons", format!("{horizons:?}")),
    );
    let rows: Vec<Vec<f64>> = (0..study.horizons.len())
        .map(|i| vec![study.horizons[i], study.values[i], study.errors[i], study.bounds[i]])
        .collect();
    let series =
        vec![("series/ruelle_convergence.csv".to_string(), csv_string(&["horizon", "value", "error", "bound"], &rows))];

    Ok(RunOutput { report, series })
}

/// Runs one named suite (or all of them) and assembles the report.
pub fn cmd_suite(name: &str, command: &str, opts: &SuiteOpts) -> Result<RunOutput> {
    let runs: Vec<&str> = if name == "all" {
        SUITE_NAMES[..SUITE_NAMES.len() - 1].to_vec()
    } else if SUITE_NAMES.contains(&name) {
        vec![name]
    } else {
        return Err(Error::Domain(format!(
            "unknown suite {name:?}; expected one of {SUITE_NAMES:?}"
        )));
    };
    let params = format!(
        "suite={name};seed={};order={};eps={:?}",
        opts.seed,
        opts.order,
        effective_eps(opts)
    );
    let digest = input_digest(None, &params)?;
    let mut report = RunReport::new(command, &digest, opts.seed);
    let mut series = Vec::new();
    for r in runs {
        let (blocks, s) = match r {
            "ruelle-shift" => suite_ruelle_shift(opts)?,
            "franks" => suite_franks()?,
            "lift" => suite_lift(opts)?,
            "entropy" => suite_entropy(opts)?,
            "localfn" => suite_localfn()?,
            _ => unreachable!("validated above"),
        };
        report.blocks.extend(blocks);
        series.extend(s);
    }
    Ok(RunOutput { report, series })
}

fn effective_eps(opts: &SuiteOpts) -> Vec<f64> {
    opts.eps_list.clone().unwrap_or_else(|| vec![1e-3, 3e-3, 1e-2, 3e-2, 1e-1])
}

type SuiteBlocks = (Vec<Block>, Vec<(String, String)>);

/// Shift family on a fixed even-harmonic tube: closed-form Ruelle increments,
/// exactness under shear conjugation and tube splitting, and the helicity
/// response scan against its finite-difference oracle.
fn suite_ruelle_shift(opts: &SuiteOpts) -> Result<SuiteBlocks> {
    let f = ScalarProfile1D::constant(1.0).add(&ScalarProfile1D::sin_term(2, 0.5)?)?;
    let g = ScalarProfile1D::constant(1.0);
    let tube = TubeProfile::new(f, g, (0.0, 0.0), (1, 0))?;
    let bump = ScalarProfile1D::zero().with_bump(0.25, 0.2, 0.7)?;
    let mass = bump.integral01();
    let (m, _) = tube.frame_offset();
    let eps_list = effective_eps(opts);

    let ru0 = ruelle_tube_closed(&tube);
    let sheared = tube.shear_pushforward(3)?;
    let ru0_sheared = ruelle_tube_closed(&sheared);
    let (left, right) = tube.split_at_half()?;
    let ru0_split = ruelle_tube_closed(&left) + ruelle_tube_closed(&right);

    let mut closed_resid = 0.0f64;
    let mut shear_resid = 0.0f64;
    let mut split_resid = 0.0f64;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in &eps_list {
        let shifted = ruelle_shift_family(&tube, &bump, eps)?;
        let d_ru = ruelle_tube_closed(&shifted) - ru0;
        let predicted = eps * m as f64 * mass;
        closed_resid = closed_resid.max((d_ru - predicted).abs());

        let d_ru_sheared = ruelle_tube_closed(&shifted.shear_pushforward(3)?) - ru0_sheared;
        shear_resid = shear_resid.max((d_ru_sheared - d_ru).abs());

        let (sl, sr) = shifted.split_at_half()?;
        let d_ru_split = ruelle_tube_closed(&sl) + ruelle_tube_closed(&sr) - ru0_split;
        split_resid = split_resid.max((d_ru_split - d_ru).abs());

        rows.push(vec![eps, d_ru, predicted]);
    }
    let eps_desc = format!("{eps_list:?}");
    let mut blocks = vec![
        Block::gate("ruelle-shift/delta_ru_closed_form", closed_resid, 1e-12)
            .with_input("eps_list", &eps_desc)
            .with_expected("eps_m_mass_at_max", eps_list.iter().cloned().fold(0.0, f64::max) * m as f64 * mass),
        Block::gate("ruelle-shift/shear_conjugation_invariance", shear_resid, 1e-12)
            .with_input("shear_power", 3),
        Block::gate("ruelle-shift/split_additivity", split_resid, 1e-12),
    ];

    let scan = delta_helicity_scan(&tube, &bump, &eps_list)?;
    blocks.push(
        Block::gate_ge("ruelle-shift/delta_h_r_squared", scan.r_squared, 0.999)
            .with_input("eps_list", &eps_desc),
    );
    blocks.push(Block::gate_eq(
        "ruelle-shift/delta_h_slope_vs_fd_oracle",
        scan.slope,
        scan.fd_oracle_slope,
        1e-6,
    ));
    blocks.push(Block::check(
        "ruelle-shift/delta_h_no_nonlinearity_warning",
        !scan.nonlinearity_warning,
    ));
    blocks.push(
        Block::info("ruelle-shift/delta_h_slope_candidates", scan.slope)
            .with_expected("start_fixed", scan.candidate_start_fixed)
            .with_expected("end_fixed", scan.candidate_end_fixed),
    );

    let mut scan_rows = Vec::with_capacity(eps_list.len());
    for i in 0..scan.eps_list.len() {
        scan_rows.push(vec![scan.eps_list[i], scan.dh_start_fixed[i], scan.dh_end_fixed[i]]);
    }
    let series = vec![
        (
            "series/ruelle_shift_eps.csv".to_string(),
            csv_string(&["eps", "delta_ru", "predicted"], &rows),
        ),
        (
            "series/delta_h_scan.csv".to_string(),
            csv_string(&["eps", "dh_start_fixed", "dh_end_fixed"], &scan_rows),
        ),
    ];
    Ok((blocks, series))
}

/// Local Franks-type field certificates on the mixed-coefficient input, plus
/// the linear kappa scaling of both measured sups.
fn suite_franks() -> Result<SuiteBlocks> {
    let input = FranksInput {
        b11: ScalarProfile1D::zero().with_bump(0.5, 0.3, 0.5)?,
        b12: ScalarProfile1D::zero().with_bump(0.45, 0.25, 0.3)?,
        b21: ScalarProfile1D::zero().with_bump(0.55, 0.25, -0.4)?,
        kappa: 0.4,
        horizon: 2.0,
    };
    let cf = franks_local_field(&input)?;
    let mut blocks =
        certificate_blocks("franks/", &cf, &["per_term_constant", "c0_reference"]);
    let kh = franks_kappa_halving(&input)?;
    blocks.push(Block::gate_eq("franks/kappa_halving_c0_ratio", kh.c0_ratio, 0.5, 0.05));
    blocks.push(Block::gate_eq("franks/kappa_halving_dt_ratio", kh.dt_ratio, 0.5, 0.05));
    Ok((blocks, Vec::new()))
}

/// Lift-axiom certificates over seeded admissible parameter draws.
fn suite_lift(opts: &SuiteOpts) -> Result<SuiteBlocks> {
    let flowbox = FlowBoxField::new(0.5)?;
    let draws = lift_draws(&flowbox, 5, opts.seed);
    let mut blocks = Vec::new();
    for (i, &(x0, eps)) in draws.iter().enumerate() {
        let cf = lift_axiom_field(&flowbox, x0, eps)?;
        blocks.extend(certificate_blocks(&format!("lift/draw{i}/"), &cf, &[]));
    }
    Ok((blocks, Vec::new()))
}

/// Entropy of the unit-roof cat suspension, exact fixed-point counts, roof
/// scaling, and the first/second-order response of entropy to time changes.
fn suite_entropy(opts: &SuiteOpts) -> Result<SuiteBlocks> {
    let mut count_gap = 0.0f64;
    for n in 1..=12u32 {
        let pts = periodic_points(CAT_MAP, n)?;
        let p = periodic::mat_pow(&CAT_MAP, n)?;
        let det = (i128::from(p[0][0]) - 1) * (i128::from(p[1][1]) - 1)
            - i128::from(p[0][1]) * i128::from(p[1][0]);
        count_gap = count_gap.max((pts.count() as f64 - det.unsigned_abs() as f64).abs());
    }
    let mut blocks = vec![Block::gate("entropy/fixed_point_counts", count_gap, 0.0)
        .with_input("orders", "1..=12")];

    let unit = CatSuspension::cat(TrigPoly2::constant(1.0))?;
    let golden = ((3.0 + 5.0f64.sqrt()) / 2.0).ln();
    let base = entropy_suspension(&unit, opts.order)?;
    blocks.push(
        Block::gate_eq("entropy/unit_roof_vs_eigenvalue", base.value, golden, 0.02)
            .with_input("order", opts.order),
    );

    let doubled = entropy_suspension(&unit.with_roof(TrigPoly2::constant(2.0))?, opts.order)?;
    blocks.push(Block::gate_eq(
        "entropy/roof_doubling_halves",
        doubled.value,
        base.value / 2.0,
        BRACKET_TOL,
    ));

    let grid =
        vec![-0.05, -0.0375, -0.025, -0.0125, 0.0125, 0.025, 0.0375, 0.05];
    let cos_f = TrigPoly2::cos([1, 0], 1.0);
    let dc_cos = entropy_derivative_check(&unit, &cos_f, &grid, opts.order)?;
    blocks.push(
        Block::gate("entropy/meanzero_slope", dc_cos.fd_slope.abs(), 0.02)
            .with_input("f", "cos(2 pi x1)"),
    );
    blocks.push(Block::gate("entropy/meanzero_quad_residual", dc_cos.fit_residual, 1e-3));

    let const_f = TrigPoly2::constant(0.3);
    let dc_const = entropy_derivative_check(&unit, &const_f, &grid, opts.order)?;
    blocks.push(
        Block::gate_eq(
            "entropy/const_slope_formula",
            dc_const.fd_slope,
            0.3 * dc_const.base_entropy,
            0.05 * dc_const.base_entropy,
        )
        .with_input("f", "0.3"),
    );

    let tau = std::f64::consts::TAU;
    let var_cos = variance_estimate(&unit, &|x: f64, _: f64| (tau * x).cos(), 0.0, 8, 64, opts.seed)?;
    blocks.push(
        Block::gate_ge("entropy/variance_nonnegative_2se", var_cos.value, -2.0 * var_cos.std_error)
            .with_measured("std_error", var_cos.std_error),
    );

    let halfwidth = 0.25;
    let bump = origin_bump(halfwidth);
    let mass = quad1d(
        |s| {
            let d = s / halfwidth;
            (1.0 - 1.0 / (1.0 - d * d)).exp()
        },
        (-halfwidth, halfwidth),
        quad_tol(1e-12),
    )?
    .value;
    let var_bump =
        variance_estimate(&unit, &bump, mass * mass, 8, 64, opts.seed.wrapping_add(1))?;
    blocks.push(
        Block::gate_ge("entropy/bump_variance_positive_3se", var_bump.value, 3.0 * var_bump.std_error)
            .with_measured("std_error", var_bump.std_error),
    );

    // Second-order response against entropy times variance; the two sides
    // carry different discretization and sampling errors, so this comparison
    // is recorded without gating the run.
    blocks.push(
        Block::gate_eq(
            "entropy/quad_coeff_vs_en_var",
            2.0 * dc_cos.quad[2],
            dc_cos.base_entropy * var_cos.value,
            0.3 * (dc_cos.base_entropy * var_cos.value).abs(),
        )
        .informative(),
    );

    let rows: Vec<Vec<f64>> = (0..dc_cos.eps.len())
        .map(|i| vec![dc_cos.eps[i], dc_cos.entropy[i], dc_const.entropy[i]])
        .collect();
    let series = vec![(
        "series/entropy_eps.csv".to_string(),
        csv_string(&["eps", "entropy_meanzero", "entropy_const"], &rows),
    )];
    Ok((blocks, series))
}

/// The two coadjoint-motivated local functionals on their model inputs:
/// zero-sum functional with scaling covariance, and certified minimum
/// periods with roof scaling.
fn suite_localfn() -> Result<SuiteBlocks> {
    let field = TrigField3T::canonical_sines();
    let zeros = find_zeros(&field, 16, 1e-12)?;
    let s = s_functional(&zeros)?;
    let golden = 48.0 * std::f64::consts::PI * std::f64::consts::PI;
    let mut blocks = vec![
        Block::gate_eq("localfn/zero_count", s.zero_count as f64, 8.0, 0.0),
        Block::gate_eq("localfn/s_canonical_sines", s.value, golden, 1e-6),
    ];

    let tau = 0.25;
    let scaled_zeros = find_zeros(&field.scale(1.0 + tau), 16, 1e-12)?;
    let s_scaled = s_functional(&scaled_zeros)?;
    blocks.push(
        Block::gate(
            "localfn/s_scaling_covariance",
            (s_scaled.value - (1.0 + tau) * (1.0 + tau) * s.value).abs(),
            1e-10,
        )
        .with_input("tau", tau),
    );

    let unit = CatSuspension::cat(TrigPoly2::constant(1.0))?;
    let p_unit = min_period(&unit, 4)?;
    blocks.push(
        Block::gate_eq("localfn/pmin_unit_roof", p_unit.value, 1.0, 0.0)
            .with_input("orders_searched", p_unit.orders_searched),
    );

    let cos_roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.1));
    let p_cos = min_period(&unit.with_roof(cos_roof.clone())?, 4)?;
    blocks.push(
        Block::gate_eq("localfn/pmin_cos_roof", p_cos.value, 1.1, 1e-12)
            .with_input("orders_searched", p_cos.orders_searched)
            .with_input("orbit_point", format!("{:?}", p_cos.orbit_point)),
    );

    let p_scaled = min_period(&unit.with_roof(cos_roof.scale(2.0))?, 4)?;
    blocks.push(Block::gate(
        "localfn/pmin_scaling_covariance",
        (p_scaled.value - 2.0 * p_cos.value).abs(),
        1e-10,
    ));
    Ok((blocks, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Pass;

    #[test]
    fn test_suites_unknown_name_rejected() {
        let err = cmd_suite("spectra", "flowinv suite spectra", &SuiteOpts::default());
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn test_suites_localfn_passes_and_prefixes() {
        let out = cmd_suite("localfn", "flowinv suite localfn", &SuiteOpts::default()).unwrap();
        assert!(out.report.all_pass());
        assert!(!out.report.blocks.is_empty());
        assert!(out.report.blocks.iter().all(|b| b.name.starts_with("localfn/")));
        assert!(out.series.is_empty());
        assert!(out.report.input_digest.starts_with("sha256:"));
    }

    #[test]
    fn test_suites_localfn_deterministic_bytes() {
        let opts = SuiteOpts { seed: 9, ..SuiteOpts::default() };
        let a = cmd_suite("localfn", "flowinv suite localfn --seed 9", &opts).unwrap();
        let b = cmd_suite("localfn", "flowinv suite localfn --seed 9", &opts).unwrap();
        assert_eq!(a.report.to_json(), b.report.to_json());
    }

    #[test]
    fn test_suites_ruelle_shift_exactness_blocks() {
        let out =
            cmd_suite("ruelle-shift", "flowinv suite ruelle-shift", &SuiteOpts::default()).unwrap();
        assert!(out.report.all_pass(), "failed: {:?}", out.report.first_failure());
        let names: Vec<&str> = out.report.blocks.iter().map(|b| b.name.as_str()).collect();
        assert!(names.contains(&"ruelle-shift/shear_conjugation_invariance"));
        assert!(names.contains(&"ruelle-shift/split_additivity"));
        assert_eq!(out.series.len(), 2);
        let (ref path, ref csv) = out.series[0];
        assert_eq!(path, "series/ruelle_shift_eps.csv");
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("eps,delta_ru,predicted\n"));
    }

    #[test]
    fn test_suites_invariants_rejects_non_tube_model() {
        let dir = std::env::temp_dir().join("flowinv_suite_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("box.json");
        std::fs::write(&path, r#"{"type": "flow_box", "delta": 0.5}"#).unwrap();
        let err = cmd_invariants(&path, "flowinv invariants", &SuiteOpts::default());
        match err {
            Err(Error::ModelFile { message, .. }) => assert!(message.contains("toric_tube")),
            other => panic!("expected model-file error, got {other:?}"),
        }
    }

    #[test]
    fn test_suites_invariants_rejects_short_horizon() {
        let dir = std::env::temp_dir().join("flowinv_suite_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tube.json");
        std::fs::write(
            &path,
            r#"{"type": "toric_tube", "F": {"const": 0.0}, "G": {"const": 1.0}}"#,
        )
        .unwrap();
        let opts = SuiteOpts { horizon: 40.0, ..SuiteOpts::default() };
        assert!(cmd_invariants(&path, "flowinv invariants", &opts).is_err());
    }

    #[test]
    fn test_suites_entropy_informative_block_never_gates() {
        let out = cmd_suite("entropy", "flowinv suite entropy", &SuiteOpts::default()).unwrap();
        let quad = out
            .report
            .blocks
            .iter()
            .find(|b| b.name == "entropy/quad_coeff_vs_en_var")
            .expect("informative block present");
        assert_eq!(quad.pass, Pass::Informative);
        assert!(out.report.all_pass(), "failed: {:?}", out.report.first_failure());
    }
}
