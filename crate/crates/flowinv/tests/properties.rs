//! Property tests over randomized tubes, profiles, and reports: structural
//! identities that must hold for every admissible input, not just the
//! curated fixtures.

use proptest::prelude::*;

use flowinv::invariants::helicity::helicity_tube_wedge;
use flowinv::invariants::ruelle::ruelle_tube_closed;
use flowinv::model::profile::ScalarProfile1D;
use flowinv::model::tube::TubeProfile;
use flowinv::numerics::{quad1d, QuadratureSpec};
use flowinv::report::{fmt_float, Block, Pass, RunReport};

fn smooth_profile() -> impl Strategy<Value = ScalarProfile1D> {
    (
        prop::collection::vec(-1.0..1.0f64, 1..4),
        -0.5..0.5f64,
        -0.5..0.5f64,
    )
        .prop_map(|(poly, ca, sa)| {
            ScalarProfile1D::from_poly(&poly)
                .unwrap()
                .add(&ScalarProfile1D::cos_term(1, ca).unwrap())
                .unwrap()
                .add(&ScalarProfile1D::sin_term(2, sa).unwrap())
                .unwrap()
        })
}

fn bumpy_profile() -> impl Strategy<Value = ScalarProfile1D> {
    (
        smooth_profile(),
        prop::option::of((0.3..0.7f64, 0.05..0.2f64, -1.0..1.0f64)),
    )
        .prop_map(|(p, bump)| match bump {
            Some((center, halfwidth, amplitude)) => {
                p.with_bump(center, halfwidth, amplitude).unwrap()
            }
            None => p,
        })
}

/// The tube constructor certifies positivity of `G`, so its strategy keeps a
/// comfortable floor under the oscillating terms.
fn positive_profile() -> impl Strategy<Value = ScalarProfile1D> {
    (1.2..2.5f64, -0.3..0.3f64, -0.2..0.2f64).prop_map(|(c0, c1, ca)| {
        ScalarProfile1D::from_poly(&[c0, c1])
            .unwrap()
            .add(&ScalarProfile1D::cos_term(1, ca).unwrap())
            .unwrap()
    })
}

fn tube() -> impl Strategy<Value = TubeProfile> {
    (
        bumpy_profile(),
        positive_profile(),
        (-1.0..1.0f64, -1.0..1.0f64),
        (-3..=3i64, -3..=3i64),
    )
        .prop_map(|(f, g, start, offset)| TubeProfile::new(f, g, start, offset).unwrap())
}

fn parts_identity_residual(tp: &TubeProfile) -> f64 {
    let a = tp.primitive_a().unwrap();
    let b = tp.primitive_b().unwrap();
    let (a0, b0) = tp.boundary_start();
    let (c, d) = tp.boundary_end().unwrap();
    let spec = QuadratureSpec::with_tol(1e-12);
    let int_bg = quad1d(|t| b.eval(t) * tp.g().eval(t), (0.0, 1.0), spec).unwrap().value;
    let int_af = quad1d(|t| a.eval(t) * tp.f().eval(t), (0.0, 1.0), spec).unwrap().value;
    (int_bg - (c * d - a0 * b0) - int_af).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn test_helicity_parts_identity_random_tubes(tp in tube()) {
        let residual = parts_identity_residual(&tp);
        prop_assert!(residual <= 1e-9, "parts-identity residual {residual:.3e}");
    }

    #[test]
    fn test_helicity_tube_wedge_class_shift_linear(
        tp in tube(),
        da in -2.0..2.0f64,
        db in -2.0..2.0f64,
    ) {
        let base = helicity_tube_wedge(&tp).unwrap();
        let (a0, b0) = tp.boundary_start();
        let shifted =
            helicity_tube_wedge(&tp.with_boundary_start((a0 + da, b0 + db))).unwrap();
        let predicted = da * tp.f().integral01() + db * tp.g().integral01();
        let gap = (shifted - base - predicted).abs();
        prop_assert!(gap <= 1e-9, "class-shift gap {gap:.3e} (predicted {predicted})");
    }

    #[test]
    fn test_ruelle_tube_closed_shear_invariant(tp in tube(), p in -3..=3i64) {
        let before = ruelle_tube_closed(&tp);
        let after = ruelle_tube_closed(&tp.shear_pushforward(p).unwrap());
        let gap = (after - before).abs();
        prop_assert!(
            gap <= 1e-12 * (1.0 + before.abs()),
            "shear conjugation moved the closed Ruelle value by {gap:.3e}"
        );
    }

    #[test]
    fn test_tube_shear_pushforward_inverse(tp in tube(), p in -3..=3i64) {
        let there_and_back = tp.shear_pushforward(p).unwrap().shear_pushforward(-p).unwrap();
        prop_assert_eq!(there_and_back.frame_offset(), tp.frame_offset());
        prop_assert_eq!(there_and_back.boundary_start(), tp.boundary_start());
        let scale = 1.0 + tp.f().sup_bound() + (p.abs() as f64) * tp.g().sup_bound();
        for k in 0..=32 {
            let t = k as f64 / 32.0;
            let gap = (there_and_back.f().eval(t) - tp.f().eval(t)).abs();
            prop_assert!(gap <= 1e-12 * scale, "F mismatch {gap:.3e} at t = {t}");
            prop_assert_eq!(there_and_back.g().eval(t), tp.g().eval(t));
        }
    }

    #[test]
    fn test_profile_antiderivative_derivative_round_trip(
        p in smooth_profile(),
        start in -2.0..2.0f64,
    ) {
        let recovered = p.antiderivative(start).unwrap().derivative().unwrap();
        let scale = 1.0 + p.sup_bound();
        for k in 0..=32 {
            let t = k as f64 / 32.0;
            let gap = (recovered.eval(t) - p.eval(t)).abs();
            prop_assert!(gap <= 1e-10 * scale, "round-trip gap {gap:.3e} at t = {t}");
        }
    }
}

fn finite_f64() -> impl Strategy<Value = f64> {
    prop_oneof![
        prop::num::f64::NORMAL,
        prop::num::f64::SUBNORMAL,
        prop::num::f64::ZERO,
        -1e12..1e12f64,
    ]
}

fn pass_value() -> impl Strategy<Value = Pass> {
    prop_oneof![Just(Pass::True), Just(Pass::False), Just(Pass::Informative)]
}

fn key() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,12}"
}

fn block() -> impl Strategy<Value = Block> {
    (
        "[a-z][a-z0-9_/]{0,24}",
        prop::collection::btree_map(key(), ".{0,20}", 0..3),
        prop::collection::btree_map(key(), finite_f64(), 0..3),
        prop::collection::btree_map(key(), finite_f64(), 0..3),
        prop::option::of(finite_f64()),
        pass_value(),
    )
        .prop_map(|(name, inputs, measured, expected, tolerance, pass)| Block {
            name,
            inputs: inputs.into_iter().collect(),
            measured: measured.into_iter().collect(),
            expected: expected.into_iter().collect(),
            tolerance,
            pass,
        })
}

fn report() -> impl Strategy<Value = RunReport> {
    (".{0,40}", "[a-z0-9:]{0,40}", any::<u64>(), prop::collection::vec(block(), 0..6)).prop_map(
        |(command, digest, seed, blocks)| {
            let mut r = RunReport::new(&command, &digest, seed);
            for b in blocks {
                r.push(b);
            }
            r
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn test_report_run_report_json_round_trip(r in report()) {
        let text = r.to_json();
        let back = RunReport::from_json(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json(), text, "re-serialization is not byte-identical");
    }

    #[test]
    fn test_report_fmt_float_bitwise_round_trip(
        x in prop_oneof![
            prop::num::f64::NORMAL,
            prop::num::f64::SUBNORMAL,
            prop::num::f64::ZERO,
            prop::num::f64::INFINITE,
        ]
    ) {
        let parsed: f64 = fmt_float(x).parse().unwrap();
        prop_assert_eq!(parsed.to_bits(), x.to_bits(), "fmt_float altered {x:?}");
    }
}
