use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toeplitz_bench::mixed;
use toeplitz_core::endo::{decide_endo_equal, laca_gamma_check};
use toeplitz_core::equivalence::{decide_bh_quasifree, essential_free_witness, structural_witness, verify_free, verify_quasifree, BhDecision};
use toeplitz_core::module_kit::{basis_to_unitary, check_unitary_matrix, FDAlgebra};
use toeplitz_core::{random, Representation};

fn bh_witness(c: &mut Criterion) {
    let (omega, tau) = (mixed(2, 1), mixed(2, 1).untwisted());
    let BhDecision::Equivalent(q) = decide_bh_quasifree(&omega, &tau).unwrap() else { unreachable!("equal multiplicity") };
    c.bench_function("decide_bh_quasifree", |b| b.iter(|| decide_bh_quasifree(black_box(&omega), black_box(&tau)).unwrap()));
    let mut group = c.benchmark_group("verify_quasifree");
    for depth in [2, 3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| b.iter(|| verify_quasifree(&omega, &tau, &q, d).unwrap()));
    }
    group.finish();
}

fn essential(c: &mut Criterion) {
    let omega = Representation::cycle(2, [1, 2]).unwrap();
    let tau = Representation::cycle(2, [1, 1, 2]).unwrap();
    let u = essential_free_witness(&omega, &tau).unwrap();
    c.bench_function("verify_free/essential/depth4", |b| b.iter(|| verify_free(&omega, &tau, black_box(&u), 4).unwrap()));
}

fn endomorphisms(c: &mut Criterion) {
    let tau = mixed(2, 1);
    let omega = tau.clone().with_twist(tau.twist_or_identity().mul(&random::unitary(&mut toeplitz_bench::rng(3), 2)).unwrap()).unwrap();
    c.bench_function("decide_endo_equal/depth3", |b| b.iter(|| decide_endo_equal(&omega, &tau, 3).unwrap()));
    let q = structural_witness(&omega, &tau).unwrap().expect("same layout");
    let u = q.u.scalar_matrix().expect("scalar");
    c.bench_function("laca_gamma_check/depth3", |b| b.iter(|| laca_gamma_check(&omega, &tau, &q.w, &u, 3).unwrap()));
}

fn module_kit(c: &mut Criterion) {
    let alg = FDAlgebra::new(vec![2, 1]).unwrap();
    let u = random::module_unitary(&mut toeplitz_bench::rng(8), &alg, 3);
    let columns = u.columns();
    c.bench_function("check_unitary_matrix/3", |b| b.iter(|| check_unitary_matrix(black_box(&u)).unwrap()));
    c.bench_function("basis_to_unitary/3", |b| b.iter(|| basis_to_unitary(black_box(&columns)).unwrap()));
}

criterion_group!(benches, bh_witness, essential, endomorphisms, module_kit);
criterion_main!(benches);
