//! Defect scans, multiplicity and the Wold decomposition.

use std::collections::BTreeMap;

use crate::algebra::{defect_element, evaluate};
use crate::error::Result;
use crate::rep::{permute_blocks, BasisName, BasisUnitary, NameVector, Piece, PieceMap, Representation, Selector};

/// Basis names `b` of depth at most `depth` with `π(p_n) e_b = e_b`.
///
/// The scan evaluates the defect element through the generator actions and
/// never looks at block kinds. For this class of representations the defect
/// operator is diagonal with 0/1 entries, which the scan also asserts.
pub fn defect_basis(rep: &Representation, depth: usize) -> Result<Vec<BasisName>> {
    let p = defect_element(rep.n());
    let mut out = Vec::new();
    for name in rep.basis_enum(depth)? {
        let e = NameVector::basis(name.clone());
        let image = evaluate(&p, rep, &e)?;
        if image == e {
            out.push(name);
        } else {
            debug_assert!(image.is_zero(), "defect operator not diagonal at {name:?}");
        }
    }
    Ok(out)
}

/// The rank of the defect projection: the number of Fock blocks.
pub fn multiplicity(rep: &Representation) -> usize {
    rep.fock_blocks().len()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WoldReport {
    pub multiplicity: usize,
    pub shift_block_indices: Vec<usize>,
    pub essential_block_indices: Vec<usize>,
    /// Defect scan at depth 0.
    pub defect_names: Vec<BasisName>,
    /// Essential blocks first, then the Fock blocks; twist and conjugation
    /// carried over.
    pub reconstruction: Representation,
    /// `block_map[b]` is the reconstruction block holding block `b`.
    pub block_map: Vec<usize>,
}

impl WoldReport {
    /// The unitary `e_name ↦ e_{name with block relabelled}` from the space of
    /// the input to the space of the reconstruction. It intertwines the two
    /// generator families.
    pub fn relabel(&self, rep: &Representation) -> Result<BasisUnitary> {
        if self.block_map.iter().enumerate().all(|(a, &b)| a == b) {
            return Ok(BasisUnitary::identity());
        }
        let pieces = self
            .block_map
            .iter()
            .enumerate()
            .map(|(from, &to)| Piece { source: Selector::blocks([from]), target: Selector::blocks([to]) })
            .collect();
        let map = PieceMap::new(rep.layout().clone(), self.reconstruction.layout().clone(), pieces)?;
        BasisUnitary::relabel(map, BTreeMap::new())
    }
}

pub fn wold(rep: &Representation) -> Result<WoldReport> {
    let essential = rep.essential_blocks();
    let shift = rep.fock_blocks();
    let order: Vec<usize> = essential.iter().chain(shift.iter()).copied().collect();
    let mut block_map = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        block_map[old] = new;
    }
    Ok(WoldReport {
        multiplicity: shift.len(),
        defect_names: defect_basis(rep, 0)?,
        shift_block_indices: shift,
        essential_block_indices: essential,
        reconstruction: permute_blocks(rep, &order)?,
        block_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ScalarMatrix;
    use crate::random;
    use crate::rep::{BlockKind, RankVector};
    use crate::word::Letter;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(word: &[Letter]) -> BlockKind {
        BlockKind::cycle(word.to_vec())
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect_basis(&Representation::fock(2), 3).unwrap(), vec![BasisName::fock(0, [])]);
        assert!(defect_basis(&Representation::cycle(2, [1, 2]).unwrap(), 3).unwrap().is_empty());
        let swapped = Representation::fock_multiple(2, 2).with_twist(ScalarMatrix::permutation(&[1, 0])).unwrap();
        assert_eq!(defect_basis(&swapped, 2).unwrap(), vec![BasisName::fock(0, []), BasisName::fock(1, [])]);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&Representation::fock(3)), 1);
        assert_eq!(multiplicity(&Representation::fock_multiple(2, 3)), 3);
        let ess = Representation::new(2, vec![cyc(&[1, 2]), cyc(&[2])]).unwrap();
        assert_eq!(multiplicity(&ess), 0);
        for d in 0..4 {
            assert!(defect_basis(&ess, d).unwrap().is_empty());
        }
    }

    #[test]
    fn wold_examples() {
        let mixed = Representation::new(2, vec![BlockKind::Fock, cyc(&[1])]).unwrap();
        let r = wold(&mixed).unwrap();
        assert_eq!((r.multiplicity, r.shift_block_indices.clone(), r.essential_block_indices.clone()), (1, vec![0], vec![1]));
        assert_eq!(r.reconstruction.blocks(), &[cyc(&[1]), BlockKind::Fock]);
        let r = wold(&Representation::fock_multiple(2, 2)).unwrap();
        assert_eq!((r.multiplicity, r.essential_block_indices.len()), (2, 0));
        let r = wold(&Representation::cycle(2, [1, 2]).unwrap()).unwrap();
        assert_eq!((r.multiplicity, r.defect_names.len()), (0, 0));
    }

    #[test]
    fn defect_count_matches_multiplicity_at_every_depth() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=3 {
            for _ in 0..12 {
                let rep = random::representation(&mut rng, n);
                for d in 0..=3 {
                    assert_eq!(defect_basis(&rep, d).unwrap().len(), multiplicity(&rep));
                }
                assert_eq!(defect_basis(&rep.untwisted(), 2).unwrap(), defect_basis(&rep, 2).unwrap());
            }
        }
    }

    #[test]
    fn reconstruction_is_intertwined_by_the_relabel() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for n in 1..=3 {
            for _ in 0..10 {
                let rep = random::representation(&mut rng, n);
                let report = wold(&rep).unwrap();
                assert_eq!(multiplicity(&report.reconstruction), report.multiplicity);
                let ess = report.reconstruction.essential_blocks().len();
                assert!(report.reconstruction.blocks()[..ess].iter().all(|b| !b.is_fock()));
                let w = report.relabel(&rep).unwrap();
                for r in 0..rep.layout().rank_bound(3).unwrap().min(200) {
                    let e = RankVector::basis(r);
                    for i in 1..=n as Letter {
                        for adj in [false, true] {
                            let lhs = w.apply(&rep.apply_ranked(i, adj, &e).unwrap()).unwrap();
                            let rhs = report.reconstruction.apply_ranked(i, adj, &w.apply(&e).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}
