//! Fast vs naive checking, and split/greedy throughput by worker count.
//!
//! Run with `--no-default-features` to measure the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use capcheck::{check_fast, check_naive, check_split, par, Cap, Geometry};

fn greedy(r: u32, q: u64, seed: u64) -> Cap {
    let g = Geometry::new(r, q).unwrap();
    Cap::empty(&g).greedy_extend(seed).unwrap()
}

fn fast_vs_naive(c: &mut Criterion) {
    let mut group = c.benchmark_group("fast_vs_naive");
    group.sample_size(10);
    for (r, q) in [(4, 4), (6, 4), (4, 8)] {
        let cap = greedy(r, q, 1);
        let label = format!("PG({r},{q}) n={}", cap.len());
        group.bench_with_input(BenchmarkId::new("fast", &label), &cap, |b, cap| {
            b.iter(|| check_fast(black_box(cap)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("naive", &label), &cap, |b, cap| {
            b.iter(|| check_naive(black_box(cap)).unwrap())
        });
    }
    group.finish();
}

fn split_workers(c: &mut Criterion) {
    let mut group = c.benchmark_group("split_workers");
    group.sample_size(10);
    let cap = greedy(8, 4, 1);
    let max = par::available_workers();
    let mut workers = vec![1, 2, 4, max];
    workers.sort_unstable();
    workers.dedup();
    for w in workers {
        group.bench_with_input(BenchmarkId::new("PG(8,4) s=8", w), &w, |b, &w| {
            b.iter(|| check_split(black_box(&cap), 8, w).unwrap())
        });
    }
    group.finish();
}

fn greedy_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_sweep");
    group.sample_size(10);
    let g = Geometry::new(4, 4).unwrap();
    for w in [1, 0] {
        let name = if w == 1 { "sequential" } else { "all_workers" };
        group.bench_function(BenchmarkId::new("PG(4,4) 256 seeds", name), |b| {
            b.iter(|| {
                par::map_indexed(256, w, |s| Cap::empty(&g).greedy_extend(s as u64).unwrap().len())
                    .into_iter()
                    .max()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, fast_vs_naive, split_workers, greedy_sweep);
criterion_main!(benches);
