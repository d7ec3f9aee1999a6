use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use conormal_core::conormal::{conormal_equations_test, lift_flag, sample_conormal_point};
use conormal_core::oracle::{verify_theorem_b, SweepOptions};
use conormal_core::weyl::{GrassContext, Permutation};
use conormal_core::{Field, Matrix, Subspace};

fn random_rows(p: u64, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    // A fixed LCG keeps the inputs identical across runs.
    let mut s = 0x2545_f491_u64;
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((s >> 33) % p) as i64
                })
                .collect()
        })
        .collect()
}

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [8, 16, 32] {
        for (name, field) in [("F7", Field::prime(7).unwrap()), ("Q", Field::rationals())] {
            let m = Matrix::from_i64_rows(field, n, &random_rows(7, n, n)).unwrap();
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| b.iter(|| black_box(m.rref())));
        }
    }
    group.finish();
}

fn bench_intersect(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    let a = Subspace::canonicalize(&Matrix::from_i64_rows(f, 12, &random_rows(5, 6, 12)).unwrap());
    let b = Subspace::canonicalize(&Matrix::from_i64_rows(f, 12, &random_rows(5, 7, 12)[1..]).unwrap());
    c.bench_function("intersect 12", |bch| bch.iter(|| black_box(a.intersect(&b).unwrap())));
}

fn bench_conormal(c: &mut Criterion) {
    let ctx = GrassContext::type_a(8, 4).unwrap();
    let w = Permutation::new(vec![2, 4, 6, 8, 1, 3, 5, 7]).unwrap();
    let field = Field::prime(3).unwrap();
    let pt = sample_conormal_point(&w, &ctx, field, 7).unwrap();
    c.bench_function("conormal test Gr(4,8)", |b| {
        b.iter(|| black_box(conormal_equations_test(&pt, &w, &ctx).unwrap()))
    });
    c.bench_function("lift flag Gr(4,8)", |b| b.iter(|| black_box(lift_flag(&pt, &w, &ctx).unwrap())));

    let ctx = GrassContext::type_c(3).unwrap();
    let w = Permutation::new(vec![2, 4, 6, 1, 3, 5]).unwrap();
    let pt = sample_conormal_point(&w, &ctx, field, 7).unwrap();
    c.bench_function("lift flag SGr(6)", |b| b.iter(|| black_box(lift_flag(&pt, &w, &ctx).unwrap())));
}

fn bench_sweep(c: &mut Criterion) {
    let ctx = GrassContext::type_a(4, 2).unwrap();
    let w = Permutation::new(vec![2, 4, 1, 3]).unwrap();
    let f2 = Field::prime(2).unwrap();
    let opts = SweepOptions { jobs: 1, ..Default::default() };
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("theorem-b Gr(2,4) F2", |b| {
        b.iter(|| black_box(verify_theorem_b(&w, &ctx, f2, &opts).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_rref, bench_intersect, bench_conormal, bench_sweep);
criterion_main!(benches);
