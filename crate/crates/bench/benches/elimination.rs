use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use spinel_bench::{neighborhood, star_block, value_vector};
use spinel_core::problems::{maxcut_reduce_2local, preset, random_cubic_graph};
use spinel_core::{
    eliminate_spin, expand_neg_abs, full_solve, fwht, reduce, EliminationOrder, ReductionLimits,
};

fn transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("fwht");
    for d in [8, 12, 16] {
        let values = value_vector(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &values, |b, v| {
            b.iter(|| fwht(black_box(v)).unwrap())
        });
    }
    group.finish();
}

fn expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand_neg_abs");
    for d in [4, 8, 12] {
        let p = neighborhood(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &p, |b, p| {
            b.iter(|| expand_neg_abs(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn single_elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("eliminate_spin");
    let limits = ReductionLimits::default();
    for d in [4, 8, 12] {
        let h = star_block(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &h, |b, h| {
            b.iter(|| eliminate_spin(black_box(h), 1, &limits).unwrap())
        });
    }
    group.finish();
}

fn pipelines(c: &mut Criterion) {
    let bit48 = preset("bit48_10").unwrap();
    c.bench_function("reduce_bit48_10_greedy", |b| {
        b.iter(|| {
            reduce(
                black_box(&bit48),
                &EliminationOrder::Greedy { keep: 2 },
                &ReductionLimits::default(),
            )
        })
    });
    c.bench_function("full_solve_bit48_10", |b| {
        b.iter(|| full_solve(black_box(&bit48)).unwrap())
    });
    let graph = random_cubic_graph(128, 1).unwrap();
    c.bench_function("maxcut_2local_n128", |b| {
        b.iter(|| maxcut_reduce_2local(black_box(&graph), &ReductionLimits::default(), 1).unwrap())
    });
}

criterion_group!(benches, transform, expansion, single_elimination, pipelines);
criterion_main!(benches);
