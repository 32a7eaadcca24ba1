use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use setcat::catalog::{category, embedding};
use setcat::equiv::find_equivalence;
use setcat::exactnum::Cyclo;
use setcat::io::{parse_category, serialize_category};
use setcat::relprod::{condense_by_invertible_bosons, verify_stacking_identity, verify_unit_law};
use setcat_bench::{ising_squared, pointed_case, seed_with_order, shuffled};

fn bench_cyclo(c: &mut Criterion) {
    let a: Cyclo = "z16 + 3/2*z16^3 - z5^2".parse().unwrap();
    let b: Cyclo = "z12 - 2*z8^3 + 1/3".parse().unwrap();
    let mut group = c.benchmark_group("cyclo");
    group.bench_function("mul", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    group.bench_function("inverse", |bch| bch.iter(|| black_box(&a).inverse().unwrap()));
    group.finish();
}

fn bench_validation(c: &mut Criterion) {
    let text = serialize_category(&category("double_z4").deligne_product(category("toric_code")));
    c.bench_function("validate/D(Z4) x toric", |bch| bch.iter(|| parse_category(black_box(&text)).unwrap()));
}

fn bench_condensation(c: &mut Criterion) {
    let mut group = c.benchmark_group("condense");
    let (p, h) = ising_squared();
    group.bench_function("ising squared on (psi,psi)", |bch| bch.iter(|| condense_by_invertible_bosons(&p, &h).unwrap()));
    let seed = seed_with_order(64, 64);
    let (_, p, h) = pointed_case(seed, 64);
    group.bench_function("pointed |A|=64", |bch| bch.iter(|| condense_by_invertible_bosons(&p, &h).unwrap()));
    group.finish();
}

fn bench_identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("identities");
    group.sample_size(10);
    let (d4, e4) = (category("double_z4"), embedding("double_z4.canonical"));
    group.bench_function("unit law D(Z4)", |bch| bch.iter(|| verify_unit_law(d4, e4).unwrap()));
    let (ds, es) = (category("double_semion"), embedding("double_semion.b"));
    group.bench_function("stacking double semion", |bch| bch.iter(|| verify_stacking_identity(ds, ds, es, es).unwrap()));
    group.finish();
}

fn bench_equivalence(c: &mut Criterion) {
    let seed = seed_with_order(64, 64);
    let (_, p, _) = pointed_case(seed, 64);
    c.bench_function("equiv/pointed |A|=64 shuffled", |bch| {
        bch.iter_batched(|| shuffled(&p, 11), |q| find_equivalence(&p, &q, None).unwrap().unwrap(), BatchSize::SmallInput)
    });
}

criterion_group!(benches, bench_cyclo, bench_validation, bench_condensation, bench_identities, bench_equivalence);
criterion_main!(benches);
