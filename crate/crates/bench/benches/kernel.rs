use std::hint::black_box;

use clusterlab_core::bruhat::{bruhat_lambda, build_bfz_seed, DoubleWord};
use clusterlab_core::cluster::{mutate_along, ExchangeMatrix, Seed};
use clusterlab_core::poisson::{mutate_pair, random_compatible_pair, CompatiblePair};
use clusterlab_core::quantum::{mutate_quantum_along, QuantumSeed};
use clusterlab_core::strata::enumerate_affine_strata;
use clusterlab_core::IntMatrix;
use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a3() -> Seed {
    let b = ExchangeMatrix::from_rows(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]], 3).unwrap();
    Seed::from_matrix(b)
}

fn a2_pair() -> CompatiblePair {
    CompatiblePair::new(
        ExchangeMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]], 2).unwrap(),
        IntMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap(),
    )
    .unwrap()
}

fn classical(c: &mut Criterion) {
    let s = a3();
    let word = [0, 1, 2, 0, 1, 2, 0, 1];
    c.bench_function("mutate_along a3 len 8", |b| b.iter(|| mutate_along(black_box(&s), &word).unwrap()));
}

fn pairs(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = loop {
        if let Some(p) = random_compatible_pair(&mut rng, 4, 5, 2) {
            break p;
        }
    };
    c.bench_function("mutate_pair 4x5", |b| b.iter(|| mutate_pair(black_box(&p), 0, 1).unwrap()));
}

fn quantum(c: &mut Criterion) {
    let q = QuantumSeed::initial(&a2_pair()).unwrap();
    let word = [0, 1, 0, 1, 0];
    c.bench_function("mutate_quantum_along a2 len 5", |b| {
        b.iter(|| mutate_quantum_along(black_box(&q), &word).unwrap())
    });
}

fn bruhat(c: &mut Criterion) {
    let w = DoubleWord::parse("1,2,1,-1,-2,-1", 2).unwrap();
    c.bench_function("build_bfz_seed sl3", |b| b.iter(|| build_bfz_seed(black_box(&w)).unwrap()));
    c.bench_function("bruhat_lambda sl3", |b| b.iter(|| bruhat_lambda(black_box(&w)).unwrap()));
}

fn strata(c: &mut Criterion) {
    let w = DoubleWord::parse("1,2,1,-1,-2,-1", 2).unwrap();
    let (_, lambda) = bruhat_lambda(&w).unwrap().integer_scaling();
    c.bench_function("enumerate_affine_strata n=8", |b| {
        b.iter(|| enumerate_affine_strata(black_box(&lambda)).unwrap())
    });
}

criterion_group!(benches, classical, pairs, quantum, bruhat, strata);
criterion_main!(benches);
