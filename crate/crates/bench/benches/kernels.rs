//! Benchmarks for the kernels that dominate the exhaustive runs: scalar
//! field arithmetic, exact echelon reduction, the fraction-free integer
//! elimination with its column replay, and word evaluation.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use suffreg_core::bareiss;
use suffreg_core::linalg::{echelon, ExactMatrix};
use suffreg_core::roots::{FactorType, RootSystem};
use suffreg_core::scalar::Scalar;
use suffreg_core::verify::{fast_pair_verdict, scaled_system_matrix};
use suffreg_core::weyl::{word_to_element, WeylElement};

fn sample_scalar() -> Scalar {
    &(&Scalar::ratio(3, 7) + &Scalar::sqrt2(-1, 2)) + &Scalar::sqrt3(5, 6)
}

fn e7_sample_element(rs: &RootSystem) -> WeylElement {
    // A mid-length word mixing all seven generators.
    word_to_element(rs, &[1, 3, 5, 7, 2, 4, 6, 1, 7, 3, 2, 5]).unwrap()
}

fn scalar_ops(c: &mut Criterion) {
    let x = sample_scalar();
    let y = &Scalar::sqrt6(2, 5) - &Scalar::ratio(1, 3);
    c.bench_function("scalar_mul", |b| b.iter(|| black_box(&x) * black_box(&y)));
    c.bench_function("scalar_invert", |b| {
        b.iter(|| black_box(&x).invert().unwrap())
    });
}

fn exact_echelon(c: &mut Criterion) {
    let rs = RootSystem::build(FactorType::E7).unwrap();
    let w = e7_sample_element(&rs);
    let dim = 7;
    let mut a = ExactMatrix::zero(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut v = -w.at(i, j).clone();
            if i == j {
                v += &Scalar::one();
            }
            a.data[i * dim + j] = v;
        }
    }
    c.bench_function("exact_echelon_7x7", |b| b.iter(|| echelon(black_box(&a))));
}

fn integer_elimination(c: &mut Criterion) {
    let rs = RootSystem::build(FactorType::E7).unwrap();
    let w = e7_sample_element(&rs);
    let m = scaled_system_matrix(&rs, &w);
    c.bench_function("bareiss_eliminate_7x7", |b| {
        b.iter(|| bareiss::eliminate(black_box(&m), 7))
    });
    let elim = bareiss::eliminate(&m, 7);
    let mut col = [0i64; bareiss::MAX_DIM];
    col[..7].copy_from_slice(&[4, -4, 0, 0, 4, 0, 2]);
    c.bench_function("bareiss_column_replay", |b| {
        b.iter(|| elim.transform_column(black_box(&col)))
    });
    c.bench_function("pair_verdict_e7", |b| {
        b.iter(|| fast_pair_verdict(black_box(&rs), black_box(&w), 17))
    });
}

fn word_evaluation(c: &mut Criterion) {
    let rs = RootSystem::build(FactorType::E6).unwrap();
    let word = [6u8, 5, 3, 2, 4, 1, 2, 3, 5, 6, 4, 3, 2, 1, 6, 5];
    c.bench_function("word_to_element_len16_e6", |b| {
        b.iter(|| word_to_element(black_box(&rs), black_box(&word)).unwrap())
    });
}

criterion_group!(
    benches,
    scalar_ops,
    exact_echelon,
    integer_elimination,
    word_evaluation
);
criterion_main!(benches);
