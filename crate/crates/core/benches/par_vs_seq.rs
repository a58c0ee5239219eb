//! Parallel vs sequential throughput on the embarrassingly parallel
//! workloads: batched route comparisons (scan-style grids) and batched
//! heat-trace evaluation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torusdet_core::parallel::{map_ordered, map_ordered_seq};
use torusdet_core::zeta::{EvalOptions, DetRoute};
use torusdet_core::{determinant, heat_trace, make_operator, zeta_prime0_oracle, OperatorSpec};

fn grid(n: usize) -> Vec<OperatorSpec> {
    let mut specs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let tau1 = 0.5 * i as f64 / n as f64;
            let v0 = 0.5 + 3.0 * j as f64 / n as f64;
            specs.push(make_operator(tau1, 1.0, v0).unwrap());
        }
    }
    specs
}

fn bench_oracle_grid(c: &mut Criterion) {
    let specs = grid(4);
    let mut group = c.benchmark_group("oracle_psi_grid_16");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", specs.len()), |b| {
        b.iter(|| map_ordered(&specs, |s| zeta_prime0_oracle(s, 1e-10).unwrap().0))
    });
    group.bench_function(BenchmarkId::new("sequential", specs.len()), |b| {
        b.iter(|| map_ordered_seq(&specs, |s| zeta_prime0_oracle(s, 1e-10).unwrap().0))
    });
    group.finish();
}

fn bench_det_grid(c: &mut Criterion) {
    let specs = grid(3);
    let opts = EvalOptions::default();
    let mut group = c.benchmark_group("corrected_det_grid_9");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| map_ordered(&specs, |s| determinant(s, DetRoute::Corrected, &opts).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            map_ordered_seq(&specs, |s| determinant(s, DetRoute::Corrected, &opts).unwrap())
        })
    });
    group.finish();
}

fn bench_heat_grid(c: &mut Criterion) {
    let spec = make_operator(0.3, 1.2, 1.0).unwrap();
    let ts: Vec<f64> = (1..=256).map(|k| 0.01 * k as f64).collect();
    let mut group = c.benchmark_group("heat_trace_grid_256");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| map_ordered(&ts, |&t| heat_trace(&spec, t, 1e-12).unwrap().value))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| map_ordered_seq(&ts, |&t| heat_trace(&spec, t, 1e-12).unwrap().value))
    });
    group.finish();
}

criterion_group!(benches, bench_oracle_grid, bench_det_grid, bench_heat_grid);
criterion_main!(benches);
