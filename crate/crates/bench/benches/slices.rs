use atlas_bench::{certify, good_data, neighbourhood_slices, quadruple, triple};
use atlas_core::factory::TripleData;
use atlas_core::PrimeField;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn slices(c: &mut Criterion) {
    let mut g = c.benchmark_group("neighbourhood");
    for d in [3, 5, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| neighbourhood_slices(black_box(d)))
        });
    }
    g.finish();
}

fn constructions(c: &mut Criterion) {
    let mut g = c.benchmark_group("construct");
    g.sample_size(20);
    for a in [0, 1, 2] {
        let data = good_data(a, 1);
        g.bench_with_input(BenchmarkId::new("triple", a), &data, |b, d| {
            b.iter(|| triple(d).unwrap())
        });
    }
    for a in [0, 1] {
        let data = good_data(a, 2);
        g.bench_with_input(BenchmarkId::new("quadruple", a), &data, |b, d| {
            b.iter(|| quadruple(d, 0).unwrap())
        });
    }
    g.finish();
}

fn certification(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify");
    g.sample_size(20);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = triple(&TripleData::random(PrimeField::default(), 1, 1, &mut rng)).unwrap();
    g.bench_function("triple (1;1)", |b| b.iter(|| certify(&t, 3, 1).unwrap()));
    let q = quadruple(&good_data(0, 2), 0).unwrap();
    g.bench_function("quadruple (0;2,2)", |b| b.iter(|| certify(&q, 4, 0).unwrap()));
    g.finish();
}

criterion_group!(benches, slices, constructions, certification);
criterion_main!(benches);
