use std::hint::black_box;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use helly_bench::{construction, random};
use helly_core::{
    count_intersecting_colorful, extract_intersecting_subfamily, max_intersecting_subfamily_exact,
};

fn colorful_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_colorful");
    for (d, n) in [(1, 16), (2, 6), (2, 8)] {
        let classes = construction(d, n);
        group.bench_with_input(BenchmarkId::new(format!("d{d}"), n), &classes, |b, cl| {
            b.iter(|| count_intersecting_colorful(black_box(cl)).unwrap())
        });
    }
    group.finish();
}

fn extraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract");
    for seed in [1u64, 2] {
        let classes = random(2, 8, seed);
        group.bench_with_input(BenchmarkId::new("random_d2_n8", seed), &classes, |b, cl| {
            b.iter(|| extract_intersecting_subfamily(black_box(cl)).unwrap())
        });
    }
    group.finish();
}

fn exact_max(c: &mut Criterion) {
    let classes = construction(2, 10);
    c.bench_function("max_exact_construction_d2_n10", |b| {
        b.iter(|| max_intersecting_subfamily_exact(black_box(classes.class(0)), 32).unwrap())
    });
}

criterion_group!(benches, colorful_counting, extraction, exact_max);
criterion_main!(benches);
