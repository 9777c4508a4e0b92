use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cube_sections::eulerian::eulerian_row;
use cube_sections::numeric::rat;
use cube_sections::quadrature::{integrate, IntegrandSpec, QuadratureConfig};
use cube_sections::sections::{eval_exact, isolate_crossings};
use std::hint::black_box;

fn exact_evaluation(c: &mut Criterion) {
    let mut g = c.benchmark_group("eval_exact");
    let t = rat(3, 10);
    for d in [10u32, 50, 135, 300] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| eval_exact(black_box(d), &t).unwrap()));
    }
    g.finish();
}

fn eulerian_rows(c: &mut Criterion) {
    let mut g = c.benchmark_group("eulerian_row");
    g.sample_size(10);
    for d in [100u32, 500, 2000] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| eulerian_row(black_box(d)).unwrap()));
    }
    g.finish();
}

fn crossings(c: &mut Criterion) {
    let mut g = c.benchmark_group("isolate_crossings");
    g.sample_size(10);
    let (lo, hi) = (rat(0, 1), rat(1, 2));
    for d in [3u32, 6, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| isolate_crossings(black_box(d), (&lo, &hi)).unwrap()));
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    let mut g = c.benchmark_group("integrate");
    let cfg = QuadratureConfig::with_tol(1e-10);
    for d in [5u32, 30, 400] {
        let spec = IntegrandSpec::section(d, 0.3);
        g.bench_with_input(BenchmarkId::from_parameter(d), &spec, |b, spec| b.iter(|| integrate(black_box(spec), &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, exact_evaluation, eulerian_rows, crossings, quadrature);
criterion_main!(benches);
