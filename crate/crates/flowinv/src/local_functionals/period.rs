//! Certified shortest period of the suspension flow.
//!
//! The period of a flow orbit over a base orbit of least period `n` is the
//! Birkhoff sum of the roof over that orbit, so orbits not yet enumerated
//! (least period at least `n + 1`) have period at least `(n + 1) inf(roof)`.
//! Once that bound exceeds the best candidate, the minimum is certified.

use crate::entropy::periodic::periodic_points;
use crate::error::{Error, Result};
use crate::model::suspension::CatSuspension;
use crate::model::trig3::TrigPoly2;
use std::collections::HashSet;

/// Largest supported search order.
pub const MAX_SEARCH_ORDER: u32 = 10;

#[derive(Debug, Clone)]
pub struct MinPeriodResult {
    /// Certified minimum flow period.
    pub value: f64,
    /// Least period of the realizing base orbit.
    pub orbit_order: u32,
    /// Lexicographically smallest point of the realizing orbit.
    pub orbit_point: [f64; 2],
    /// Orders enumerated before the pruning bound closed the search.
    pub orders_searched: u32,
    /// Number of least-period-`n` orbits per searched order.
    pub orbit_counts: Vec<usize>,
}

/// Rigorous lower bound for the roof: grid minimum minus Lipschitz slack.
fn roof_lower_bound(roof: &TrigPoly2) -> f64 {
    const N: usize = 512;
    let mut min = f64::INFINITY;
    for i in 0..N {
        for j in 0..N {
            min = min.min(roof.eval(i as f64 / N as f64, j as f64 / N as f64));
        }
    }
    min - roof.grad_sup_bound() * std::f64::consts::SQRT_2 * 0.5 / N as f64
}

/// Shortest periodic-orbit period of the suspension flow, certified complete
/// by the pruning bound, or [`Error::MinPeriodIncomplete`] carrying the best
/// candidate when `n_max` orders do not suffice.
pub fn min_period(model: &CatSuspension, n_max: u32) -> Result<MinPeriodResult> {
    if n_max == 0 || n_max > MAX_SEARCH_ORDER {
        return Err(Error::Domain(format!("search order {n_max} outside 1..={MAX_SEARCH_ORDER}")));
    }
    let roof = model.roof();
    let lower = roof_lower_bound(roof);
    if lower <= 0.0 {
        return Err(Error::Domain(format!(
            "roof lower bound {lower:.3e} is not positive; pruning cannot certify"
        )));
    }
    let mut best = f64::INFINITY;
    let mut best_order = 0u32;
    let mut best_point = [0.0f64; 2];
    let mut orbit_counts = Vec::new();
    for n in 1..=n_max {
        let pts = periodic_points(*model.mat(), n)?;
        let divisors: Vec<u32> = (1..n).filter(|d| n % d == 0).collect();
        let mut visited: HashSet<[i64; 2]> = HashSet::new();
        let mut count_n = 0usize;
        for &p in pts.points() {
            if visited.contains(&p) {
                continue;
            }
            let has_least_period_n = divisors.iter().all(|&d| {
                let mut q = p;
                for _ in 0..d {
                    q = pts.step(q);
                }
                q != p
            });
            if !has_least_period_n {
                continue;
            }
            let mut q = p;
            let mut sum = 0.0;
            let mut representative = p;
            for _ in 0..n {
                visited.insert(q);
                representative = representative.min(q);
                let x = pts.point_f64(q);
                sum += roof.eval(x[0], x[1]);
                q = pts.step(q);
            }
            count_n += 1;
            if sum < best {
                best = sum;
                best_order = n;
                best_point = pts.point_f64(representative);
            }
        }
        orbit_counts.push(count_n);
        if (n as f64 + 1.0) * lower > best {
            return Ok(MinPeriodResult {
                value: best,
                orbit_order: best_order,
                orbit_point: best_point,
                orders_searched: n,
                orbit_counts,
            });
        }
    }
    Err(Error::MinPeriodIncomplete { best, order_reached: n_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(roof: TrigPoly2) -> CatSuspension {
        CatSuspension::cat(roof).unwrap()
    }

    #[test]
    fn test_period_unit_roof_is_origin_fixed_point() {
        let r = min_period(&model(TrigPoly2::constant(1.0)), 10).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.orbit_order, 1);
        assert_eq!(r.orbit_point, [0.0, 0.0]);
        assert_eq!(r.orders_searched, 1);
    }

    #[test]
    fn test_period_cos_roof_realized_at_origin() {
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.1));
        let r = min_period(&model(roof), 10).unwrap();
        assert!((r.value - 1.1).abs() <= 1e-12);
        assert_eq!(r.orbit_order, 1);
    }

    #[test]
    fn test_period_scales_with_roof() {
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.1));
        let base = min_period(&model(roof.clone()), 10).unwrap().value;
        assert_eq!(min_period(&model(TrigPoly2::constant(2.0)), 10).unwrap().value, 2.0);
        for s in [0.5, 2.0] {
            let scaled = min_period(&model(roof.scale(s)), 10).unwrap().value;
            assert!((scaled - s * base).abs() <= 1e-10, "s={s}");
        }
    }

    #[test]
    fn test_period_invariant_under_roof_precomposition() {
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.1));
        let base = min_period(&model(roof.clone()), 10).unwrap().value;
        let pulled = roof.compose_matrix(&[[2, 1], [1, 1]]);
        let moved = min_period(&model(pulled), 10).unwrap().value;
        assert!((base - moved).abs() <= 1e-12, "{base} vs {moved}");
    }

    #[test]
    fn test_period_orbit_counts_match_moebius_inventory() {
        // Least-period orbit counts for the cat map: fixed-point counts
        // 1, 5, 16, 45 at orders 1..4 sieve to 1, 2, 5, 10 orbits.
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.75));
        let r = min_period(&model(roof), 10).unwrap();
        assert!(r.orders_searched >= 3);
        assert_eq!(&r.orbit_counts[..3], &[1, 2, 5]);
    }

    #[test]
    fn test_period_incomplete_without_pruning_reach() {
        let roof = TrigPoly2::constant(1.0).add(&TrigPoly2::cos([1, 0], 0.9));
        match min_period(&model(roof), 3) {
            Err(Error::MinPeriodIncomplete { best, order_reached: 3 }) => {
                assert!(best.is_finite() && best > 0.0);
            }
            other => panic!("expected incomplete search, got {other:?}"),
        }
    }

    #[test]
    fn test_period_rejects_bad_order() {
        let m = model(TrigPoly2::constant(1.0));
        assert!(min_period(&m, 0).is_err());
        assert!(min_period(&m, 11).is_err());
    }
}
