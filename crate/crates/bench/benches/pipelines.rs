use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sgcc_core::generate::random_signed_cubic;
use sgcc_core::{cover_even, cover_main, exact_scc, negativeness, OracleBudget, SignedGraph};

/// First seeded instance whose negativeness parity is `even`, skipping ε = 1.
fn instance(n: usize, negatives: usize, even: bool) -> SignedGraph {
    (0u64..)
        .map(|seed| random_signed_cubic(n, negatives, seed).unwrap())
        .find(|g| {
            let eps = negativeness(g).unwrap().negativeness;
            eps != 1 && eps.is_multiple_of(2) == even
        })
        .unwrap()
}

fn negativeness_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("negativeness");
    for n in [12, 16, 20] {
        let g = random_signed_cubic(n, n / 2, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| negativeness(g).unwrap())
        });
    }
    group.finish();
}

fn even_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("cover_even");
    for n in [10, 16, 22] {
        let g = instance(n, n / 2, true);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| cover_even(g).unwrap())
        });
    }
    group.finish();
}

fn main_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("cover_main_odd");
    group.sample_size(20);
    for n in [10, 14, 18] {
        let g = instance(n, n / 2, false);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| cover_main(g).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_scc");
    group.sample_size(10);
    for n in [6, 8, 10] {
        let g = instance(n, n / 2, true);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| exact_scc(g, OracleBudget::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, negativeness_search, even_pipeline, main_pipeline, oracle);
criterion_main!(benches);
