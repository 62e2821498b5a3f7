use criterion::{criterion_group, criterion_main, Criterion};
use hyperfactor::{
    build_u, count_factorizations, count_latin_fixed_column, count_one_factors, permanent,
    SearchConfig,
};
use hyperfactor_bench::{complete, complete_tensor};

fn permanents(c: &mut Criterion) {
    let single = SearchConfig::single_threaded();
    let parallel = SearchConfig::default();
    let g36 = complete_tensor(6, 3);
    c.bench_function("permanent G3_6 single thread", |b| {
        b.iter(|| permanent(&g36, &single).unwrap())
    });
    c.bench_function("permanent G3_6 parallel", |b| {
        b.iter(|| permanent(&g36, &parallel).unwrap())
    });
    let u5 = build_u(5).unwrap();
    c.bench_function("permanent U(5)", |b| {
        b.iter(|| permanent(&u5, &single).unwrap())
    });
}

fn factors(c: &mut Criterion) {
    let cfg = SearchConfig::single_threaded();
    let g93 = complete(9, 3);
    c.bench_function("one-factors G3_9", |b| {
        b.iter(|| count_one_factors(&g93, &cfg).unwrap())
    });
    let k6 = complete(6, 2);
    c.bench_function("factorizations K_6", |b| {
        b.iter(|| count_factorizations(&k6, &cfg).unwrap())
    });
}

fn latin(c: &mut Criterion) {
    let cfg = SearchConfig::single_threaded();
    c.bench_function("latin fixed column n=5", |b| {
        b.iter(|| count_latin_fixed_column(5, &cfg).unwrap())
    });
}

criterion_group!(benches, permanents, factors, latin);
criterion_main!(benches);
