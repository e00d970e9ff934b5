//! Compares the data-parallel brute-force sweeps against their
//! single-threaded counterparts.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use waci::geodesic;
use waci::quadform::{self, diagonal_matrix};

fn bench_unimodular_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("unimodular_sweep");
    for &(cycles, bound) in &[(2usize, 40i64), (3, 20)] {
        group.bench_function(format!("parallel/{cycles}x{bound}"), |b| {
            b.iter(|| {
                assert!(!geodesic::unimodular_pair_exists(cycles, bound).unwrap());
            })
        });
        group.bench_function(format!("sequential/{cycles}x{bound}"), |b| {
            b.iter(|| {
                assert!(!geodesic::unimodular_pair_exists_seq(cycles, bound).unwrap());
            })
        });
    }
    group.finish();
}

fn bench_oracle_batch(c: &mut Criterion) {
    let mut forms = Vec::new();
    for a in 1i64..=4 {
        for b in -4i64..=4 {
            if b != 0 {
                forms.push(diagonal_matrix(&[a, b]));
            }
        }
    }
    let mut group = c.benchmark_group("signed_squares_oracle");
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || forms.clone(),
            |fs| quadform::signed_squares_batch(&fs, 12),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || forms.clone(),
            |fs| quadform::signed_squares_batch_seq(&fs, 12),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, bench_unimodular_sweep, bench_oracle_batch);
criterion_main!(benches);
