//! Finitely presented representations of `E_n`.
//!
//! A [`Representation`] is a direct sum of Fock and cycle blocks, optionally
//! twisted by a scalar unitary (`T_i = Σ_j B_j t_{ji}`) and conjugated by a
//! diagonal phase unitary `C` (`T_i ↦ C T_i C*`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::scalar::Scalar;
use crate::sparse::SparseVector;
use crate::word::{check_letter, Letter, Word};

pub mod basis_unitary;
pub mod layout;

pub use basis_unitary::{BasisUnitary, Piece, PieceMap, Relabel, Selector, SelectorEntry, Split};
pub use layout::{BasisName, BlockKind, Layout};

pub type NameVector = SparseVector<BasisName>;
pub type RankVector = SparseVector<u64>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Representation {
    layout: Layout,
    twist: Option<ScalarMatrix>,
    /// Diagonal conjugation phases keyed by rank; absent means 1.
    conj: BTreeMap<u64, Scalar>,
}

impl Representation {
    pub fn new(n: usize, blocks: Vec<BlockKind>) -> Result<Self> {
        Ok(Representation { layout: Layout::new(n, blocks)?, twist: None, conj: BTreeMap::new() })
    }

    pub fn from_layout(layout: Layout) -> Self {
        Representation { layout, twist: None, conj: BTreeMap::new() }
    }

    pub fn fock(n: usize) -> Self {
        Self::fock_multiple(n, 1)
    }

    /// `⊕^k` Fock; multiplicity `k`.
    pub fn fock_multiple(n: usize, k: usize) -> Self {
        Self::new(n, vec![BlockKind::Fock; k]).expect("k ≥ 1 and n ≥ 1")
    }

    /// `φ^k` for `n = 1`: the isometry `S^k`. In rank coordinates `⊕^k` Fock
    /// over one letter sends rank `r` to `r + k`, which is exactly `S^k`.
    /// For `n ≥ 2` the family `(φ(v_i))^k` is not of multiplicity `k` and is
    /// not offered.
    pub fn fock_power(n: usize, k: usize) -> Result<Self> {
        if n != 1 {
            return Err(Error::parse("n", "φ^k is only provided for n = 1"));
        }
        if k == 0 {
            return Err(Error::NoBlocks);
        }
        Ok(Self::fock_multiple(1, k))
    }

    pub fn cycle(n: usize, word: impl Into<Word>) -> Result<Self> {
        Self::new(n, vec![BlockKind::Cycle { word: word.into() }])
    }

    pub fn with_twist(mut self, twist: ScalarMatrix) -> Result<Self> {
        if twist.dim() != self.n() {
            return Err(Error::RankMismatch(twist.dim(), self.n()));
        }
        twist.require_unitary()?;
        self.twist = if twist.is_identity() { None } else { Some(twist) };
        Ok(self)
    }

    pub fn with_conj(mut self, phases: BTreeMap<u64, Scalar>) -> Result<Self> {
        for (&r, z) in &phases {
            if !z.is_unimodular() {
                return Err(Error::NotUnimodular(r));
            }
            if let Some(dim) = self.layout.dimension() {
                if r >= dim {
                    return Err(Error::RankOutOfRange(r));
                }
            }
        }
        self.conj = phases.into_iter().filter(|(_, z)| !z.is_one()).collect();
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn blocks(&self) -> &[BlockKind] {
        self.layout.blocks()
    }

    pub fn twist(&self) -> Option<&ScalarMatrix> {
        self.twist.as_ref()
    }

    pub fn twist_or_identity(&self) -> ScalarMatrix {
        self.twist.clone().unwrap_or_else(|| ScalarMatrix::identity(self.n()))
    }

    pub fn conj_phases(&self) -> &BTreeMap<u64, Scalar> {
        &self.conj
    }

    pub fn fock_blocks(&self) -> Vec<usize> {
        self.blocks().iter().enumerate().filter(|(_, b)| b.is_fock()).map(|(i, _)| i).collect()
    }

    pub fn essential_blocks(&self) -> Vec<usize> {
        self.blocks().iter().enumerate().filter(|(_, b)| !b.is_fock()).map(|(i, _)| i).collect()
    }

    /// The same blocks with no twist and no conjugation.
    pub fn untwisted(&self) -> Representation {
        Representation::from_layout(self.layout.clone())
    }

    pub fn basis_enum(&self, depth: usize) -> Result<Vec<BasisName>> {
        self.layout.basis_enum(depth)
    }

    pub fn rank_of(&self, name: &BasisName) -> Result<u64> {
        self.layout.rank_of(name)
    }

    pub fn name_at(&self, rank: u64) -> Result<BasisName> {
        self.layout.name_at(rank)
    }

    fn phase(&self, name: &BasisName) -> Result<Scalar> {
        if self.conj.is_empty() {
            return Ok(Scalar::one());
        }
        let r = self.layout.rank_of(name)?;
        Ok(self.conj.get(&r).cloned().unwrap_or_else(Scalar::one))
    }

    fn check_name(&self, name: &BasisName) -> Result<()> {
        if self.layout.is_canonical(name) {
            Ok(())
        } else {
            Err(Error::InvalidName(format!("{name:?}")))
        }
    }

    /// `T_i e_name` as a sparse combination.
    fn gen_on_name(&self, i: Letter, name: &BasisName, out: &mut NameVector, coef: &Scalar) -> Result<()> {
        self.check_name(name)?;
        let pre = coef * &self.phase(name)?.conj();
        let n = self.n();
        for j in 1..=n as Letter {
            let t = match &self.twist {
                None if j == i => Scalar::one(),
                None => continue,
                Some(m) => m.get(j as usize - 1, i as usize - 1).clone(),
            };
            if t.is_zero() {
                continue;
            }
            let image = self.layout.base_gen(j, name);
            let z = &(&pre * &t) * &self.phase(&image)?;
            out.add_term(image, &z);
        }
        Ok(())
    }

    fn gen_adj_on_name(&self, i: Letter, name: &BasisName, out: &mut NameVector, coef: &Scalar) -> Result<()> {
        self.check_name(name)?;
        let pre = coef * &self.phase(name)?.conj();
        let n = self.n();
        for j in 1..=n as Letter {
            let t = match &self.twist {
                None if j == i => Scalar::one(),
                None => continue,
                Some(m) => m.get(j as usize - 1, i as usize - 1).conj(),
            };
            if t.is_zero() {
                continue;
            }
            if let Some(image) = self.layout.base_gen_adj(j, name) {
                let z = &(&pre * &t) * &self.phase(&image)?;
                out.add_term(image, &z);
            }
        }
        Ok(())
    }

    pub fn apply_generator(&self, i: Letter, xi: &NameVector) -> Result<NameVector> {
        check_letter(i, self.n())?;
        let mut out = NameVector::zero();
        for (name, c) in xi {
            self.gen_on_name(i, name, &mut out, c)?;
        }
        Ok(out)
    }

    pub fn apply_generator_adjoint(&self, i: Letter, xi: &NameVector) -> Result<NameVector> {
        check_letter(i, self.n())?;
        let mut out = NameVector::zero();
        for (name, c) in xi {
            self.gen_adj_on_name(i, name, &mut out, c)?;
        }
        Ok(out)
    }

    /// `T_i` (or `T_i*` when `adjoint`) in rank coordinates.
    pub fn apply_ranked(&self, i: Letter, adjoint: bool, v: &RankVector) -> Result<RankVector> {
        check_letter(i, self.n())?;
        let mut names = NameVector::zero();
        for (&r, c) in v {
            let name = self.layout.name_at(r)?;
            if adjoint {
                self.gen_adj_on_name(i, &name, &mut names, c)?;
            } else {
                self.gen_on_name(i, &name, &mut names, c)?;
            }
        }
        self.to_ranks(&names)
    }

    pub fn to_ranks(&self, v: &NameVector) -> Result<RankVector> {
        let mut out = RankVector::zero();
        for (name, c) in v {
            out.add_term(self.layout.rank_of(name)?, c);
        }
        Ok(out)
    }

    pub fn to_names(&self, v: &RankVector) -> Result<NameVector> {
        let mut out = NameVector::zero();
        for (&r, c) in v {
            out.add_term(self.layout.name_at(r)?, c);
        }
        Ok(out)
    }

    /// `σ(x) = Σ_i x_i T_i` for a scalar vector `x ∈ ℂⁿ`.
    pub fn sigma_apply(&self, x: &[Scalar]) -> Result<SigmaAction<'_>> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: x.len() });
        }
        Ok(SigmaAction { rep: self, coords: x.to_vec() })
    }

    /// Rank coordinates of `name` in `self`, given a name of a summand placed
    /// at block offset `offset`.
    fn shifted(&self, name: &BasisName, offset: usize) -> BasisName {
        BasisName { block: name.block + offset, ..name.clone() }
    }
}

/// The action `ξ ↦ Σ_i x_i T_i ξ`.
pub struct SigmaAction<'a> {
    rep: &'a Representation,
    coords: Vec<Scalar>,
}

impl SigmaAction<'_> {
    pub fn apply(&self, xi: &NameVector) -> Result<NameVector> {
        let mut out = NameVector::zero();
        for (idx, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            out.add_scaled(&self.rep.apply_generator(idx as Letter + 1, xi)?, x);
        }
        Ok(out)
    }
}

/// `r1 ⊕ r2`: block lists concatenated, conjugation phases carried to the
/// ranks of the sum. Twists must agree.
pub fn direct_sum(r1: &Representation, r2: &Representation) -> Result<Representation> {
    if r1.n() != r2.n() {
        return Err(Error::RankMismatch(r1.n(), r2.n()));
    }
    if r1.twist != r2.twist {
        return Err(Error::IncompatibleTwists);
    }
    let layout = r1.layout.concat(&r2.layout)?;
    let mut conj = BTreeMap::new();
    for (&r, z) in &r1.conj {
        conj.insert(layout.rank_of(&r1.name_at(r)?)?, z.clone());
    }
    let offset = r1.blocks().len();
    for (&r, z) in &r2.conj {
        conj.insert(layout.rank_of(&r1.shifted(&r2.name_at(r)?, offset))?, z.clone());
    }
    Ok(Representation { layout, twist: r1.twist.clone(), conj })
}

/// Reorders blocks by `order` (new block `b` is old block `order[b]`),
/// carrying conjugation phases along.
pub fn permute_blocks(rep: &Representation, order: &[usize]) -> Result<Representation> {
    let blocks = order.iter().map(|&b| rep.blocks()[b].clone()).collect();
    let layout = Layout::new(rep.n(), blocks)?;
    let mut inverse = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inverse[old] = new;
    }
    let mut conj = BTreeMap::new();
    for (&r, z) in &rep.conj {
        let mut name = rep.name_at(r)?;
        name.block = inverse[name.block];
        conj.insert(layout.rank_of(&name)?, z.clone());
    }
    Ok(Representation { layout, twist: rep.twist.clone(), conj })
}
