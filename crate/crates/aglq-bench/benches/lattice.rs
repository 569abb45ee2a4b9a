use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use aglq_bench::{catalog, field};
use aglq_core::agl_mobius::{mu_table_closed, mu_table_oracle, DEFAULT_ORACLE_CAP};
use aglq_core::GroupCatalog;

fn bench_catalog_build(c: &mut Criterion) {
    c.bench_function("catalog_build_q16", |bench| {
        bench.iter(|| GroupCatalog::build(field(2, 4)).unwrap().len())
    });
    c.bench_function("catalog_build_q27", |bench| {
        bench.iter(|| GroupCatalog::build(field(3, 3)).unwrap().len())
    });
}

fn bench_mu_tables(c: &mut Criterion) {
    let q27 = catalog(3, 3);
    c.bench_function("mu_table_closed_q27", |bench| {
        bench.iter(|| mu_table_closed(black_box(&q27)).unwrap().len())
    });
    let q9 = catalog(3, 2);
    c.bench_function("mu_table_oracle_q9", |bench| {
        bench.iter(|| {
            mu_table_oracle(black_box(&q9), DEFAULT_ORACLE_CAP)
                .unwrap()
                .len()
        })
    });
}

criterion_group!(benches, bench_catalog_build, bench_mu_tables);
criterion_main!(benches);
