use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toeplitz_core::module_kit::{
    apply_matrix, basis_combine, basis_expand, basis_to_unitary, check_unitary_matrix, module_inner, FDAlgebra, ModuleMatrix,
};
use toeplitz_core::{random, Scalar};

/// Gauss-Jordan inverse of a square matrix over the Gaussian rationals.
fn invert(m: Vec<Vec<Scalar>>) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Scalar>> = m
        .into_iter()
        .enumerate()
        .map(|(r, mut row)| {
            row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].inv()?;
        for x in aug[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &aug[col][c];
                    aug[r][c] = &aug[r][c] - &d;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// The inverse of `U ∈ M_n(⊕M_k)` computed blockwise through `⊕ M_{nk}`.
fn module_inverse(alg: &FDAlgebra, u: &ModuleMatrix) -> Option<ModuleMatrix> {
    let n = u.n();
    let mut inverses = Vec::new();
    for (b, &k) in alg.blocks().iter().enumerate() {
        let big = (0..n * k)
            .map(|r| (0..n * k).map(|c| u.entry(r / k, c / k).blocks()[b].get(r % k, c % k).clone()).collect())
            .collect();
        inverses.push(invert(big)?);
    }
    Some(ModuleMatrix::from_fn(n, |r, c| {
        let blocks = alg
            .blocks()
            .iter()
            .zip(&inverses)
            .map(|(&k, inv)| toeplitz_core::ScalarMatrix::from_fn(k, |a, b| inv[r * k + a][c * k + b].clone()))
            .collect();
        alg.element(blocks).unwrap()
    }))
}

/// Inner products of images of the standard basis, and an exact two-sided inverse acting on it.
fn brute_force_unitary(alg: &FDAlgebra, u: &ModuleMatrix) -> bool {
    let n = u.n();
    let std = alg.standard_basis(n);
    let images: Vec<_> = std.iter().map(|e| apply_matrix(u, e).unwrap()).collect();
    let isometric = (0..n).all(|i| {
        (0..n).all(|j| {
            let p = module_inner(&images[i], &images[j]).unwrap();
            if i == j {
                p == alg.one()
            } else {
                p == alg.zero()
            }
        })
    });
    let Some(v) = module_inverse(alg, u) else { return false };
    let invertible = std.iter().all(|e| {
        apply_matrix(&v, &apply_matrix(u, e).unwrap()).unwrap() == *e && apply_matrix(u, &apply_matrix(&v, e).unwrap()).unwrap() == *e
    });
    isometric && invertible
}

fn algebras() -> Vec<FDAlgebra> {
    vec![FDAlgebra::complex(), FDAlgebra::new(vec![1, 1]).unwrap(), FDAlgebra::new(vec![2]).unwrap()]
}

fn candidate(rng: &mut ChaCha8Rng, alg: &FDAlgebra, n: usize) -> ModuleMatrix {
    match rng.gen_range(0..4) {
        0 => random::module_unitary(rng, alg, n),
        1 => random::module_matrix(rng, alg, n),
        2 => {
            let u = random::module_unitary(rng, alg, n);
            let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let bump = alg.scalar(&random::nonzero_scalar(rng));
            ModuleMatrix::from_fn(n, |i, j| if (i, j) == (r, c) { u.entry(i, j).add(&bump).unwrap() } else { u.entry(i, j).clone() })
        }
        _ => {
            let u = random::module_unitary(rng, alg, n);
            ModuleMatrix::from_fn(n, |i, j| u.entry(i, j).scale(&Scalar::from_int(2)))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn unitary_check_matches_brute_force(seed in any::<u64>(), which in 0usize..3, n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = &algebras()[which];
        let u = candidate(&mut rng, alg, n);
        prop_assert_eq!(check_unitary_matrix(&u).unwrap(), brute_force_unitary(alg, &u));
    }

    #[test]
    fn round_trip_and_reconstruction(seed in any::<u64>(), which in 0usize..3, n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = &algebras()[which];
        let u = random::module_unitary(&mut rng, alg, n);
        prop_assert!(check_unitary_matrix(&u).unwrap());
        prop_assert_eq!(&basis_to_unitary(&u.columns()).unwrap(), &u);
        let x = random::module_vector(&mut rng, alg, n);
        let coefs = basis_expand(&x, &u.columns()).unwrap();
        prop_assert_eq!(basis_combine(&u.columns(), &coefs).unwrap(), x);
    }
}

#[test]
fn random_unitaries_are_not_all_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alg = FDAlgebra::new(vec![2]).unwrap();
    let dense = (0..20).any(|_| {
        let u = random::module_unitary(&mut rng, &alg, 2);
        (0..2).all(|r| (0..2).all(|c| !u.entry(r, c).is_zero()))
    });
    assert!(dense);
}
