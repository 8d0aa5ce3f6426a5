use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use iasi::constructors::{construct_first_kind, ConstructionParams};
use iasi::harness::family::complete_bipartite;
use iasi::harness::{audit_with, Claim, SearchBounds};
use iasi::labeling::classify_with;
use iasi::Execution;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn audits(c: &mut Criterion) {
    let bounds = SearchBounds::default();
    let mut group = c.benchmark_group("audit");
    group.sample_size(20);
    for claim in [
        Claim::ArithmeticCharacterization,
        Claim::MaximalClassFormula,
        Claim::Subgraph,
    ] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(claim.tag(), name), &exec, |b, &exec| {
                b.iter(|| audit_with(black_box(claim), &bounds, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let g = complete_bipartite(12, 12);
    let f = construct_first_kind(&g, &ConstructionParams::new(5, 6, 1, None).unwrap()).unwrap();
    let mut group = c.benchmark_group("classify K12,12");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| classify_with(black_box(&g), &f, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, audits, classification);
criterion_main!(benches);
