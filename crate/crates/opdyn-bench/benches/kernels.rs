//! Wall-clock benchmarks for the sparse kernels, the certified solver, and
//! the end-to-end estimation pipeline.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use opdyn_core::opinions::{generate_opinions, DistributionKind, DistributionSpec};
use opdyn_core::synth::random_connected_graph;
use opdyn_core::{approxim, solve_shifted_laplacian, ApproxOptions};

fn bench_laplacian_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("laplacian_apply");
    for &n in &[10_000usize, 100_000] {
        let g = random_connected_graph(n, 4 * n, None, 17);
        let x: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        group.throughput(Throughput::Elements(g.m() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| g.laplacian_apply(&x).unwrap())
        });
    }
    group.finish();
}

fn bench_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_shifted_laplacian");
    group.sample_size(10);
    for &n in &[10_000usize, 100_000] {
        let g = random_connected_graph(n, 4 * n, None, 23);
        let spec = DistributionSpec::new(DistributionKind::Uniform, 5);
        let s = generate_opinions(n, &spec).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_shifted_laplacian(&g, &s, 1e-10, 10_000).unwrap())
        });
    }
    group.finish();
}

fn bench_approxim(c: &mut Criterion) {
    let mut group = c.benchmark_group("approxim");
    group.sample_size(10);
    for &n in &[10_000usize, 100_000] {
        let g = random_connected_graph(n, 4 * n, None, 31);
        let spec = DistributionSpec::new(DistributionKind::PowerLaw, 9);
        let s = generate_opinions(n, &spec).unwrap();
        let opts = ApproxOptions::new(1e-6);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| approxim(&g, &s, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_laplacian_apply, bench_solver, bench_approxim);
criterion_main!(benches);
