//! Parallel vs sequential baselines for the grid-heavy kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use flowinv::parallel;

fn density_like_workload(n: usize) -> f64 {
    // Stand-in for per-start-point rotation density work: a few hundred
    // closed-form trig evaluations per grid point.
    parallel::sum_indexed(n, |i| {
        let t0 = i as f64 / n as f64;
        let mut acc = 0.0;
        for k in 0..256 {
            let t = t0 + k as f64 * 0.25;
            acc += (std::f64::consts::TAU * t).sin().atan2(1.0 + t0);
        }
        acc
    })
}

fn density_like_workload_seq(n: usize) -> f64 {
    let samples = parallel::map_indexed_seq(n, |i| {
        let t0 = i as f64 / n as f64;
        let mut acc = 0.0;
        for k in 0..256 {
            let t = t0 + k as f64 * 0.25;
            acc += (std::f64::consts::TAU * t).sin().atan2(1.0 + t0);
        }
        acc
    });
    samples.iter().sum()
}

fn bench_parallel_vs_sequential(c: &mut Criterion) {
    let mut group = c.benchmark_group("density_grid");
    for &n in &[1024usize, 4096] {
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| density_like_workload(n));
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| density_like_workload_seq(n));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_parallel_vs_sequential);
criterion_main!(benches);
