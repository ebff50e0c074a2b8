use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use solvgraph_bench::{analysis, group, GROUPS};
use solvgraph_core::{catalog, verify_all, Analysis, EngineConfig, GraphMode, VerifyConfig, DEFAULT_GUARD};

fn enumerate(c: &mut Criterion) {
    let mut grp = c.benchmark_group("generate");
    for &name in GROUPS {
        let entry = catalog::lookup(name).unwrap();
        grp.bench_function(name, |b| b.iter(|| entry.group(DEFAULT_GUARD).unwrap()));
    }
    grp.finish();
}

fn solvabilizers(c: &mut Criterion) {
    let mut grp = c.benchmark_group("analysis");
    grp.sample_size(10);
    for &name in GROUPS {
        grp.bench_with_input(BenchmarkId::from_parameter(name), &name, |b, &name| {
            b.iter_batched(
                || group(name),
                |g| Analysis::new(g, EngineConfig::default()).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
    }
    grp.finish();
}

fn invariants(c: &mut Criterion) {
    let mut grp = c.benchmark_group("invariants");
    grp.sample_size(10);
    for &name in GROUPS {
        let an = analysis(name);
        let graph = an.graph(GraphMode::Induced);
        grp.bench_function(BenchmarkId::new("k44", name), |b| {
            b.iter(|| graph.find_k44(black_box(10_000_000)).unwrap())
        });
        grp.bench_function(BenchmarkId::new("diameter", name), |b| {
            b.iter(|| graph.diameter().unwrap())
        });
    }
    let an = analysis("A5");
    let full = an.graph(GraphMode::Full);
    grp.bench_function("independence/A5", |b| {
        b.iter(|| full.independence_number(black_box(150)))
    });
    grp.finish();
}

fn battery(c: &mut Criterion) {
    let mut grp = c.benchmark_group("verify");
    grp.sample_size(10);
    grp.bench_function("A5", |b| {
        b.iter_batched(
            || group("A5"),
            |g| verify_all(g, "A5", &VerifyConfig::default()).unwrap(),
            criterion::BatchSize::LargeInput,
        )
    });
    grp.finish();
}

criterion_group!(benches, enumerate, solvabilizers, invariants, battery);
criterion_main!(benches);
