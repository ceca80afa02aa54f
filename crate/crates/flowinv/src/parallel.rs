//! Data-parallel map helpers.
//!
//! Hot loops (grid averages, certificate sweeps, orbit sums, Monte Carlo
//! sampling) are expressed as index-ordered maps. With the `parallel` feature
//! (default) the work is distributed with rayon; the sequential fallback is
//! always available so the two paths can be compared. Results come back in
//! input order, so downstream reductions are deterministic regardless of
//! scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..n`, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    map_indexed_seq(n, f)
}

/// Sequential reference implementation of [`map_indexed`].
pub fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Sums `f(i)` for `i in 0..n` in fixed index order.
///
/// The parallel path materializes per-index values first and then reduces
/// sequentially, so the floating-point summation order never depends on the
/// thread schedule.
pub fn sum_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    map_indexed(n, f).into_iter().sum()
}

/// Caps the global rayon pool; a no-op without the `parallel` feature or if
/// the pool is already initialized.
pub fn configure_jobs(jobs: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_parallel_map_indexed_matches_sequential() {
        let f = |i: usize| (i as f64).sin() * (i as f64 + 1.0).ln();
        let a = map_indexed(1000, f);
        let b = map_indexed_seq(1000, f);
        assert_eq!(a, b);
    }

    #[test]
    fn test_parallel_sum_indexed_deterministic() {
        let f = |i: usize| 1.0 / (1.0 + i as f64).powi(2);
        let s1 = sum_indexed(10_000, f);
        let s2 = sum_indexed(10_000, f);
        assert_eq!(s1.to_bits(), s2.to_bits());
    }
}
