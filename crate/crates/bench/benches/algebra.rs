use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toeplitz_bench::{all_names, element_pairs, mixed};
use toeplitz_core::algebra::{evaluate, nf_mul};
use toeplitz_core::wold::{defect_basis, wold};

fn normal_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("nf_mul");
    for (terms, len) in [(2, 2), (4, 3), (8, 4)] {
        let pairs = element_pairs(3, terms, len, 16);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{terms}x{len}")), &pairs, |b, pairs| {
            b.iter(|| pairs.iter().map(|(x, y)| nf_mul(black_box(x), black_box(y)).unwrap().terms().len()).sum::<usize>())
        });
    }
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let rep = mixed(2, 2);
    let pairs = element_pairs(2, 4, 3, 8);
    let mut group = c.benchmark_group("evaluate");
    for depth in [2, 4] {
        let xi = all_names(&rep, depth);
        group.bench_with_input(BenchmarkId::from_parameter(depth), &xi, |b, xi| {
            b.iter(|| pairs.iter().map(|(a, _)| evaluate(a, &rep, black_box(xi)).unwrap().len()).sum::<usize>())
        });
    }
    group.finish();
}

fn defect(c: &mut Criterion) {
    let rep = mixed(3, 3);
    c.bench_function("defect_basis/depth4", |b| b.iter(|| defect_basis(black_box(&rep), 4).unwrap().len()));
    c.bench_function("wold", |b| b.iter(|| wold(black_box(&rep)).unwrap()));
}

criterion_group!(benches, normal_form, evaluation, defect);
criterion_main!(benches);
