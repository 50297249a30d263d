//! Benchmark inputs shared by the criterion benches.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toeplitz_core::{random, AlgebraElement, BasisName, NameVector, Representation};

/// The generator every bench draws from, so runs are comparable.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` pairs of elements with up to `terms` monomials of length `len`.
pub fn element_pairs(n: usize, terms: usize, len: usize, count: usize) -> Vec<(AlgebraElement, AlgebraElement)> {
    let mut rng = rng(n as u64 * 1000 + terms as u64 * 10 + len as u64);
    (0..count).map(|_| (random::element(&mut rng, n, terms, len), random::element(&mut rng, n, terms, len))).collect()
}

/// Every basis vector of `rep` up to `depth`, summed with coefficient one.
pub fn all_names(rep: &Representation, depth: usize) -> NameVector {
    let names: Vec<BasisName> = rep.basis_enum(depth).expect("layout enumerates");
    NameVector::from_terms(names.into_iter().map(|b| (b, toeplitz_core::Scalar::one())))
}

/// A mixed representation with `m` Fock blocks, decorated with a twist and phases.
pub fn mixed(n: usize, m: usize) -> Representation {
    random::with_multiplicity(&mut rng(m as u64), n, m)
}
