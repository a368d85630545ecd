//! Benchmarks for the data-parallel inner loops, labelled by mode so the
//! default (rayon) build and the sequential fallback can be compared:
//!
//! ```text
//! cargo bench -p convexity                         # parallel
//! cargo bench -p convexity --no-default-features   # sequential
//! ```
//!
//! Criterion stores baselines per benchmark id; the mode is part of the id.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use convexity::corpus;
use convexity::{
    antipode_chain, boolean_geometry, canonical_key, convex_shelling, coproduct,
    lattice_of_closed_sets, verify_hopf_axiom,
};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_convex_shelling(c: &mut Criterion) {
    let cross = corpus::cross_configuration();
    let batch = corpus::random_configurations(8, 7);
    let mut group = c.benchmark_group("convex_shelling");
    group.bench_function(format!("cross/{}", mode()), |b| {
        b.iter(|| convex_shelling(black_box(&cross)));
    });
    group.bench_function(format!("batch8/{}", mode()), |b| {
        b.iter(|| {
            for pc in &batch {
                black_box(convex_shelling(pc));
            }
        });
    });
    group.finish();
}

fn bench_coproduct(c: &mut Criterion) {
    let cross = corpus::cross_geometry();
    let b5 = boolean_geometry(5);
    let mut group = c.benchmark_group("coproduct");
    group.bench_function(format!("cross/{}", mode()), |b| {
        b.iter(|| coproduct(black_box(&cross)));
    });
    group.bench_function(format!("boolean5/{}", mode()), |b| {
        b.iter(|| coproduct(black_box(&b5)));
    });
    group.finish();
}

fn bench_antipode_chain(c: &mut Criterion) {
    let b4 = boolean_geometry(4);
    let cross = corpus::cross_geometry();
    let mut group = c.benchmark_group("antipode_chain");
    group.sample_size(20);
    group.bench_function(format!("boolean4/{}", mode()), |b| {
        b.iter(|| antipode_chain(black_box(&b4)));
    });
    group.bench_function(format!("cross/{}", mode()), |b| {
        b.iter(|| antipode_chain(black_box(&cross)));
    });
    group.finish();
}

fn bench_hopf_axiom(c: &mut Criterion) {
    let cross = corpus::cross_geometry();
    let mut group = c.benchmark_group("verify_hopf_axiom");
    group.sample_size(10);
    group.bench_function(format!("cross/{}", mode()), |b| {
        b.iter(|| verify_hopf_axiom(black_box(&cross)).unwrap());
    });
    group.finish();
}

fn bench_canonical_key(c: &mut Criterion) {
    // single-threaded either way; included as a parity baseline
    let b5 = lattice_of_closed_sets(&boolean_geometry(5));
    let cross = lattice_of_closed_sets(&corpus::cross_geometry());
    let mut group = c.benchmark_group("canonical_key");
    group.bench_function(format!("boolean5/{}", mode()), |b| {
        b.iter(|| canonical_key(black_box(&b5)));
    });
    group.bench_function(format!("cross/{}", mode()), |b| {
        b.iter(|| canonical_key(black_box(&cross)));
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_convex_shelling,
    bench_coproduct,
    bench_antipode_chain,
    bench_hopf_axiom,
    bench_canonical_key
);
criterion_main!(benches);
