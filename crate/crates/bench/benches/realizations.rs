use std::hint::black_box;

use aw_forge::{build, expected_constants, extract, relation_residuals, run, spectrum_float, sweep, Family, Mode};
use aw_forge_bench::{aw_truncated, racah, sweep_config, Case};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for mode in [Mode::Exact, Mode::Float] {
        for twice_j in [4, 8, 12] {
            out.push(racah(twice_j, mode).expect("racah case"));
        }
        for n in [8, 16] {
            out.push(aw_truncated(n, mode).expect("aw case"));
        }
    }
    out
}

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for case in cases() {
        group.bench_with_input(BenchmarkId::from_parameter(&case.label), &case, |b, case| {
            b.iter(|| build(black_box(&case.kind), black_box(&case.rep)).expect("build"))
        });
    }
    group.finish();
}

fn bench_relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("relation_residuals");
    for case in cases() {
        let pair = build(&case.kind, &case.rep).expect("build");
        let sc = expected_constants(&case.kind, &case.rep).expect("constants");
        group.bench_with_input(BenchmarkId::from_parameter(&case.label), &pair, |b, pair| {
            b.iter(|| relation_residuals(black_box(pair), black_box(&sc)).expect("residuals"))
        });
    }
    group.finish();
}

fn bench_recurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("recurrence");
    for case in cases() {
        let pair = build(&case.kind, &case.rep).expect("build");
        let rec = extract(&pair).expect("extract");
        let lambda = rec.diag[0].clone();
        group.bench_with_input(BenchmarkId::new("run", &case.label), &rec, |b, rec| {
            b.iter(|| run(black_box(rec), black_box(&lambda), rec.size).expect("run"))
        });
        group.bench_with_input(BenchmarkId::new("spectrum", &case.label), &pair, |b, pair| {
            b.iter(|| spectrum_float(black_box(pair)).expect("spectrum"))
        });
    }
    group.finish();
}

fn bench_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for family in [Family::Racah, Family::Wilson, Family::QRacah] {
        let cfg = sweep_config(family, 5);
        group.bench_with_input(BenchmarkId::from_parameter(family), &cfg, |b, cfg| {
            b.iter(|| sweep(black_box(cfg)).expect("sweep"))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_build, bench_relations, bench_recurrence, bench_sweeps);
criterion_main!(benches);
