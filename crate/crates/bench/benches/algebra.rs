use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use leibniz_core::catalog::{build_family, Family, FamilySpec};
use leibniz_core::grading::max_length_search;
use leibniz_core::invariants::{characteristic_sequence, SamplingConfig};
use leibniz_core::random::random_unimodular;
use leibniz_core::{Algebra, Matrix};

fn m2(n: usize) -> Algebra {
    build_family(&FamilySpec::new(Family::M2, n).with("lambda", 2)).unwrap()
}

/// The same algebra in a random basis, so tables are dense.
fn dense(a: &Algebra, seed: u64) -> Algebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    a.change_basis(&random_unimodular(a.dim(), 1, &mut rng))
        .unwrap()
}

fn leibniz_defect(c: &mut Criterion) {
    let mut g = c.benchmark_group("leibniz_defect");
    for n in [6, 9, 12] {
        let sparse = m2(n);
        let dense = dense(&sparse, 1);
        g.bench_with_input(BenchmarkId::new("catalog", n), &sparse, |b, a| {
            b.iter(|| black_box(a.leibniz_defect()))
        });
        g.bench_with_input(BenchmarkId::new("random_basis", n), &dense, |b, a| {
            b.iter(|| black_box(a.leibniz_defect()))
        });
    }
    g.finish();
}

fn char_sequence(c: &mut Criterion) {
    let mut g = c.benchmark_group("characteristic_sequence");
    let cfg = SamplingConfig::default();
    for n in [6, 9, 12] {
        let a = dense(&m2(n), 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| black_box(characteristic_sequence(a, &cfg).unwrap()))
        });
    }
    g.finish();
}

fn length_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("max_length_search");
    g.sample_size(20);
    for n in [6, 9, 12] {
        let a = m2(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| black_box(max_length_search(a, 2 * n as i64).unwrap()))
        });
    }
    let l = build_family(&FamilySpec::new(Family::L, 7).with("r", 3)).unwrap();
    g.bench_function("L_7", |b| {
        b.iter(|| black_box(max_length_search(&l, 6).unwrap()))
    });
    g.finish();
}

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for n in [8, 16, 24] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let m: Matrix = random_unimodular(n, 2, &mut rng);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.rank()))
        });
    }
    g.finish();
}

criterion_group!(benches, leibniz_defect, char_sequence, length_search, rank);
criterion_main!(benches);
