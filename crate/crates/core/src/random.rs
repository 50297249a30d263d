//! Seeded generators of exact test inputs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::matrix::ScalarMatrix;
use crate::module_kit::{FDAlgebra, FdElement, ModuleMatrix, ModuleVector};
use crate::rep::{BlockKind, NameVector, RankVector, Representation};
use crate::scalar::Scalar;
use crate::word::{Letter, Word};

const PHASES: [(i64, i64, i64, i64); 6] = [(1, 1, 0, 1), (-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, -1, 1), (3, 5, 4, 5), (5, 13, -12, 13)];

/// A small Gaussian rational, possibly zero.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let re = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    let im = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    &re + &(&im * &Scalar::i())
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let z = scalar(rng);
        if !z.is_zero() {
            return z;
        }
    }
}

/// A unimodular Gaussian rational.
pub fn phase<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let &(a, b, c, d) = PHASES.choose(rng).expect("nonempty");
    Scalar::complex(a, b, c, d)
}

/// An exact unitary: permutation times phases, optionally times a
/// Pythagorean rotation in a random coordinate plane.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ScalarMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let phases: Vec<Scalar> = (0..n).map(|_| phase(rng)).collect();
    let mut u = ScalarMatrix::permutation(&perm).mul(&ScalarMatrix::diagonal(&phases)).expect("same size");
    if n >= 2 && rng.gen_bool(0.5) {
        let p = rng.gen_range(0..n);
        let q = (p + rng.gen_range(1..n)) % n;
        let (c, s) = if rng.gen_bool(0.5) { (Scalar::ratio(3, 5), Scalar::ratio(4, 5)) } else { (Scalar::ratio(5, 13), Scalar::ratio(12, 13)) };
        let rot = ScalarMatrix::from_fn(n, |r, col| match (r, col) {
            _ if r == p && col == p => c.clone(),
            _ if r == q && col == q => c.clone(),
            _ if r == p && col == q => -s.clone(),
            _ if r == q && col == p => s.clone(),
            _ if r == col => Scalar::one(),
            _ => Scalar::zero(),
        });
        u = u.mul(&rot).expect("same size");
    }
    u
}

pub fn word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=n as Letter)).collect())
}

pub fn nonempty_word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len.max(1));
    Word::new((0..len).map(|_| rng.gen_range(1..=n as Letter)).collect())
}

/// Up to `max_terms` monomials with words of length at most `max_len`.
pub fn element<R: Rng + ?Sized>(rng: &mut R, n: usize, max_terms: usize, max_len: usize) -> AlgebraElement {
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..count).map(|_| (word(rng, n, max_len), word(rng, n, max_len), nonzero_scalar(rng))).collect();
    AlgebraElement::from_terms(n, terms).expect("letters in range")
}

pub fn cycle_block<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BlockKind {
    BlockKind::Cycle { word: nonempty_word(rng, n, 3) }
}

/// Between one and three blocks; `fock` of them are Fock blocks placed at
/// random positions among `essential` cycle blocks.
pub fn blocks<R: Rng + ?Sized>(rng: &mut R, n: usize, fock: usize, essential: usize) -> Vec<BlockKind> {
    let mut out: Vec<BlockKind> = (0..essential).map(|_| cycle_block(rng, n)).collect();
    for _ in 0..fock {
        let at = rng.gen_range(0..=out.len());
        out.insert(at, BlockKind::Fock);
    }
    out
}

/// Conjugation phases on a few low ranks.
pub fn conj_phases<R: Rng + ?Sized>(rng: &mut R, rep: &Representation) -> BTreeMap<u64, Scalar> {
    let limit = rep.layout().dimension().unwrap_or(12).min(12);
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| (rng.gen_range(0..limit), phase(rng))).collect()
}

/// Adds a twist and conjugation phases, each with probability one half.
pub fn decorate<R: Rng + ?Sized>(rng: &mut R, rep: Representation) -> Representation {
    let n = rep.n();
    let rep = if rng.gen_bool(0.5) { rep.with_twist(unitary(rng, n)).expect("unitary") } else { rep };
    if rng.gen_bool(0.5) {
        let phases = conj_phases(rng, &rep);
        rep.with_conj(phases).expect("unimodular phases in range")
    } else {
        rep
    }
}

/// One to three random blocks with a random decoration.
pub fn representation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Representation {
    let total = rng.gen_range(1..=3);
    let fock = rng.gen_range(0..=total);
    let rep = Representation::new(n, blocks(rng, n, fock, total - fock)).expect("valid blocks");
    decorate(rng, rep)
}

/// A decorated representation with exactly `m` Fock blocks and up to two cycles.
pub fn with_multiplicity<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Representation {
    let essential = rng.gen_range(usize::from(m == 0)..=2);
    let rep = Representation::new(n, blocks(rng, n, m, essential)).expect("valid blocks");
    decorate(rng, rep)
}

/// Up to `max_terms` basis vectors of depth at most `max_depth`.
pub fn name_vector<R: Rng + ?Sized>(rng: &mut R, rep: &Representation, max_terms: usize, max_depth: usize) -> NameVector {
    rep.to_names(&rank_vector(rng, rep, max_terms, max_depth)).expect("ranks in range")
}

pub fn rank_vector<R: Rng + ?Sized>(rng: &mut R, rep: &Representation, max_terms: usize, max_depth: usize) -> RankVector {
    let bound = rep.layout().rank_bound(max_depth).expect("small depth");
    let count = rng.gen_range(1..=max_terms.max(1));
    RankVector::from_terms((0..count).map(|_| (rng.gen_range(0..bound), nonzero_scalar(rng))))
}

/// An arbitrary element of `⊕ M_k`.
pub fn fd_element<R: Rng + ?Sized>(rng: &mut R, alg: &FDAlgebra) -> FdElement {
    let blocks = alg.blocks().iter().map(|&k| ScalarMatrix::from_fn(k, |_, _| scalar(rng))).collect();
    alg.element(blocks).expect("block sizes match")
}

pub fn module_vector<R: Rng + ?Sized>(rng: &mut R, alg: &FDAlgebra, n: usize) -> ModuleVector {
    ModuleVector::new((0..n).map(|_| fd_element(rng, alg)).collect()).expect("n ≥ 1")
}

pub fn module_matrix<R: Rng + ?Sized>(rng: &mut R, alg: &FDAlgebra, n: usize) -> ModuleMatrix {
    ModuleMatrix::from_fn(n, |_, _| fd_element(rng, alg))
}

/// A unitary in `M_n(⊕ M_k) ≅ ⊕ M_{nk}`, one exact `nk×nk` unitary per block.
pub fn module_unitary<R: Rng + ?Sized>(rng: &mut R, alg: &FDAlgebra, n: usize) -> ModuleMatrix {
    let big: Vec<ScalarMatrix> = alg.blocks().iter().map(|&k| unitary(rng, n * k)).collect();
    ModuleMatrix::from_fn(n, |r, c| {
        let blocks = alg
            .blocks()
            .iter()
            .zip(&big)
            .map(|(&k, m)| ScalarMatrix::from_fn(k, |a, b| m.get(r * k + a, c * k + b).clone()))
            .collect();
        alg.element(blocks).expect("block sizes match")
    })
}
