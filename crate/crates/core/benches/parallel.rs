use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use map_peel::enumerate::{lastcar_roundtrip, quad_boundary_table_with, tri_counts_with};
use map_peel::trees::TreeCounts;
use map_peel::{ExecMode, Family};

const MODES: [(&str, ExecMode); 2] =
    [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn tree_dp(c: &mut Criterion) {
    let mut g = c.benchmark_group("tree_dp_tri_40");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| TreeCounts::new(Family::Tri, 40, mode))
        });
    }
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new("tri_counts_400", name), |b| {
            b.iter(|| tri_counts_with(400, mode).unwrap())
        });
        g.bench_function(BenchmarkId::new("quad_boundary_60", name), |b| {
            b.iter(|| quad_boundary_table_with(60, mode).unwrap())
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("lastcar_sweep_quad_6");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| lastcar_roundtrip(Family::Quad, 6, mode))
        });
    }
    g.finish();
}

criterion_group!(benches, tree_dp, solvers, sweeps);
criterion_main!(benches);
