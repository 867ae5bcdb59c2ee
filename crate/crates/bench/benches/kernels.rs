//! Hot-path benchmarks: partition-table construction, single-shell
//! multiplicity evaluation for each statistics family, the quasiparticle
//! enumerator, and canonical-mixture construction and queries.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use trapfluct_core::sweep::mce_series;
use trapfluct_core::{
    distribution, enumerate_fes, CanonicalMixture, Statistics, TableCache,
    DEFAULT_ENUMERATION_BUDGET,
};

fn bench_partition_table(c: &mut Criterion) {
    c.bench_function("partition_table_2000x30_from_scratch", |b| {
        b.iter(|| {
            let cache = TableCache::new();
            let table = cache.partition_table(black_box(2000), black_box(30)).unwrap();
            black_box(table.canonical_multiplicity(2000, 30).unwrap().clone())
        })
    });
}

fn bench_shells(c: &mut Criterion) {
    let cache = TableCache::new();
    cache.partition_table(2000, 30).unwrap();
    let mut group = c.benchmark_group("shell_distribution");
    for (label, statistics) in [
        ("bose_n2000_N30", Statistics::Bose),
        ("fermi_n2000_N30", Statistics::Fermi),
        ("near_fermi_n2000_N30", Statistics::fes(28, 29).unwrap()),
        ("near_bose_n2000_N30", Statistics::fes(1, 29).unwrap()),
    ] {
        group.bench_function(label, |b| {
            b.iter(|| {
                distribution(
                    &cache,
                    black_box(2000),
                    30,
                    &statistics,
                    DEFAULT_ENUMERATION_BUDGET,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_enumerator(c: &mut Criterion) {
    let cache = TableCache::new();
    let g = Statistics::fes(2, 5).unwrap().coupling();
    c.bench_function("quasiparticle_enumeration_n24_N8", |b| {
        b.iter(|| {
            enumerate_fes(&cache, black_box(24), 8, g, DEFAULT_ENUMERATION_BUDGET).unwrap()
        })
    });
}

fn bench_mixture(c: &mut Criterion) {
    let cache = TableCache::new();
    c.bench_function("canonical_mixture_build_N10_x0.9", |b| {
        b.iter(|| {
            CanonicalMixture::new(
                &cache,
                10,
                &Statistics::Fermi,
                black_box(0.9),
                DEFAULT_ENUMERATION_BUDGET,
            )
            .unwrap()
        })
    });

    let mixture =
        CanonicalMixture::new(&cache, 10, &Statistics::Fermi, 0.9, DEFAULT_ENUMERATION_BUDGET)
            .unwrap();
    c.bench_function("canonical_mixture_query_N10_x0.9", |b| {
        b.iter(|| mixture.stats_at(black_box(0.9)).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let cache = TableCache::new();
    let mut group = c.benchmark_group("fluctuation_sweep");
    group.sample_size(10);
    group.bench_function("fermi_N30_to_n500", |b| {
        b.iter(|| {
            mce_series(&cache, 30, &Statistics::Fermi, black_box(500), DEFAULT_ENUMERATION_BUDGET)
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_partition_table,
    bench_shells,
    bench_enumerator,
    bench_mixture,
    bench_sweep
);
criterion_main!(benches);
