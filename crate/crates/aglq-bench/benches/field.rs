use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use aglq_bench::field;
use aglq_core::submodules::{enumerate_submodules, SubfieldTag};

fn bench_field_ops(c: &mut Criterion) {
    let f = field(2, 16);
    let a = f.from_code(0xBEEF).unwrap();
    let b = f.from_code(0x1234).unwrap();
    c.bench_function("gf65536_mul", |bench| {
        bench.iter(|| f.mul(black_box(a), black_box(b)).unwrap())
    });
    c.bench_function("gf65536_inv", |bench| {
        bench.iter(|| f.inv(black_box(a)).unwrap())
    });

    let f9 = field(3, 2);
    c.bench_function("gf9_generator_order", |bench| {
        bench.iter(|| f9.element_order(black_box(f9.generator())).unwrap())
    });
}

fn bench_submodule_enumeration(c: &mut Criterion) {
    let f81 = field(3, 4);
    let prime = SubfieldTag::prime_field(&f81);
    c.bench_function("enumerate_subspaces_f81_over_f3", |bench| {
        bench.iter(|| enumerate_submodules(black_box(&f81), &prime).len())
    });
}

criterion_group!(benches, bench_field_ops, bench_submodule_enumeration);
criterion_main!(benches);
