use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use finspace_core::algebra::homology_space;
use finspace_core::aspherical::is_strong_aspherical;
use finspace_core::generate::{random_height2, random_space, random_strong_aspherical};
use finspace_core::qc::is_qc_reducible;
use finspace_core::reduction::{core, is_collapsible};
use finspace_core::{fixtures, Budget, FiniteSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spaces(n: usize, count: usize) -> Vec<FiniteSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    (0..count)
        .map(|_| random_space(&mut rng, n, 0.35))
        .collect()
}

fn bench_core(c: &mut Criterion) {
    let mut group = c.benchmark_group("core");
    for n in [8, 16, 32] {
        let xs = spaces(n, 16);
        group.bench_with_input(BenchmarkId::from_parameter(n), &xs, |b, xs| {
            b.iter(|| {
                xs.iter()
                    .map(|x| core(black_box(x)).unwrap().0.len())
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn bench_collapse(c: &mut Criterion) {
    let fig3 = fixtures::fig3();
    c.bench_function("collapse/fig3", |b| {
        b.iter(|| is_collapsible(black_box(&fig3), Budget::default()).unwrap())
    });
    let xs = spaces(10, 16);
    c.bench_function("collapse/random10", |b| {
        b.iter(|| {
            xs.iter()
                .filter(|x| {
                    is_collapsible(black_box(x), Budget::default())
                        .unwrap()
                        .is_found()
                })
                .count()
        })
    });
}

fn bench_qc(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let xs: Vec<FiniteSpace> = (0..16).map(|_| random_height2(&mut rng, 10, 0.5)).collect();
    c.bench_function("qc/random_height2", |b| {
        b.iter(|| {
            xs.iter()
                .filter(|x| x.height().unwrap() == 2)
                .filter(|x| {
                    is_qc_reducible(black_box(x), Budget::default())
                        .unwrap()
                        .is_found()
                })
                .count()
        })
    });
    let fig2 = fixtures::fig2();
    c.bench_function("qc/fig2", |b| {
        b.iter(|| is_qc_reducible(black_box(&fig2), Budget::default()).unwrap())
    });
}

fn bench_strong_aspherical(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let xs: Vec<FiniteSpace> = (0..16)
        .map(|_| random_strong_aspherical(&mut rng, 14))
        .collect();
    c.bench_function("strong_aspherical/generated14", |b| {
        b.iter(|| {
            xs.iter()
                .filter(|x| {
                    is_strong_aspherical(black_box(x), Budget::default())
                        .unwrap()
                        .is_found()
                })
                .count()
        })
    });
}

fn bench_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    for n in [6, 9, 12] {
        let xs = spaces(n, 8);
        group.bench_with_input(BenchmarkId::from_parameter(n), &xs, |b, xs| {
            b.iter(|| {
                xs.iter()
                    .map(|x| homology_space(black_box(x)).unwrap().betti(1))
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_core,
    bench_collapse,
    bench_qc,
    bench_strong_aspherical,
    bench_homology
);
criterion_main!(benches);
