//! Throughput benchmarks for the batch simulator and the exact drift
//! scan. Build once with the default `parallel` feature and once with
//! `--no-default-features` to compare the rayon pool against the
//! sequential fallback; the outputs are identical by construction, so
//! the comparison is purely about speed.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use shockline::analysis::verify_drift;
use shockline::config::enumerate_states;
use shockline::montecarlo::{batch, SimMode};
use shockline::scalar::Rational;
use shockline::{Configuration, ModelParams};

fn bench_batch(c: &mut Criterion) {
    let s0: Configuration = "1:1".parse().unwrap();
    let voter = ModelParams::new(1.0, 0.5).unwrap();
    let mut group = c.benchmark_group("batch");
    group.sample_size(10);

    let trials = 200_000u64;
    group.throughput(Throughput::Elements(trials));
    group.bench_function(BenchmarkId::new("quadrant", trials), |b| {
        b.iter(|| batch(&s0, &voter, trials, 1e4, 7, SimMode::Quadrant).unwrap())
    });

    let trials = 20_000u64;
    group.throughput(Throughput::Elements(trials));
    group.bench_function(BenchmarkId::new("discrete", trials), |b| {
        b.iter(|| batch(&s0, &voter, trials, 1e4, 7, SimMode::Discrete).unwrap())
    });

    let mixed = ModelParams::new(0.5, 0.5).unwrap();
    group.bench_function(BenchmarkId::new("discrete-mixed", trials), |b| {
        b.iter(|| batch(&s0, &mixed, trials, 1e4, 7, SimMode::Discrete).unwrap())
    });
    group.finish();
}

fn bench_drift_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("drift-scan");
    group.sample_size(10);

    let states = enumerate_states(14, 4);
    group.throughput(Throughput::Elements(states.len() as u64));
    let float = ModelParams::new(0.25, 0.3).unwrap();
    group.bench_function(BenchmarkId::new("float", states.len()), |b| {
        b.iter(|| verify_drift(&states, &float).unwrap())
    });

    let states = enumerate_states(12, 4);
    group.throughput(Throughput::Elements(states.len() as u64));
    let exact =
        ModelParams::new(Rational::new(1, 4), Rational::new(3, 10)).unwrap();
    group.bench_function(BenchmarkId::new("exact", states.len()), |b| {
        b.iter(|| verify_drift(&states, &exact).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_batch, bench_drift_scan);
criterion_main!(benches);
