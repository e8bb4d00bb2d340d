use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use persistdist::bottleneck::pairwise_matrix_with;
use persistdist::interleaving::interleaving_distance_with;
use persistdist::oracle::{oracle_distance_with, OracleConfig};
use persistdist::random::{long_staircase, random_module, random_staircase, rng};
use persistdist::Execution;

fn matrix(c: &mut Criterion) {
    let mut r = rng(1);
    let ms = random_module(&mut r, 12, 40, 6);
    let ns = random_module(&mut r, 12, 40, 6);
    let mut g = c.benchmark_group("pairwise_matrix_12x12");
    for exec in Execution::all() {
        g.bench_function(BenchmarkId::from_parameter(exec.name()), |b| {
            b.iter(|| pairwise_matrix_with(black_box(&ms), black_box(&ns), exec))
        });
    }
    g.finish();
}

fn long_pair(c: &mut Criterion) {
    let m = long_staircase(&mut rng(2), 600, 6);
    let n = long_staircase(&mut rng(3), 600, 6);
    let mut g = c.benchmark_group("interleaving_t2400");
    for exec in Execution::all() {
        g.bench_function(BenchmarkId::from_parameter(exec.name()), |b| {
            b.iter(|| interleaving_distance_with(black_box(&m), black_box(&n), exec))
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut r = rng(4);
    let m = random_staircase(&mut r, 8, 3);
    let n = random_staircase(&mut r, 8, 3);
    let mut g = c.benchmark_group("oracle_distance");
    for exec in Execution::all() {
        let cfg = OracleConfig { exec, ..OracleConfig::default() };
        g.bench_function(BenchmarkId::from_parameter(exec.name()), |b| {
            b.iter(|| oracle_distance_with(black_box(&m), black_box(&n), &cfg))
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = matrix, long_pair, oracle
}
criterion_main!(benches);
