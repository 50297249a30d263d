//! Unitaries that send basis vectors to phase multiples of basis vectors.
//!
//! A [`BasisUnitary`] acts on `ℓ²(ℕ)` in rank coordinates. The elementary
//! form is a [`Relabel`]: a bijection between the names of a source layout and
//! a target layout, assembled from pieces that match the `m`-th name of one
//! selection with the `m`-th name of another, followed by phases. Without
//! pieces a relabel is the identity on ranks, i.e. the canonical rank
//! identification of two representation spaces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rep::layout::{BasisName, Layout};
use crate::rep::RankVector;
use crate::scalar::Scalar;

/// Names of `block` with `min_depth ≤ depth ≤ max_depth` (unbounded if `None`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SelectorEntry {
    pub block: usize,
    pub min_depth: usize,
    pub max_depth: Option<usize>,
}

impl SelectorEntry {
    pub fn whole(block: usize) -> Self {
        SelectorEntry { block, min_depth: 0, max_depth: None }
    }

    pub fn vacuum(block: usize) -> Self {
        SelectorEntry { block, min_depth: 0, max_depth: Some(0) }
    }

    pub fn above_vacuum(block: usize) -> Self {
        SelectorEntry { block, min_depth: 1, max_depth: None }
    }

    fn covers(&self, block: usize, depth: usize) -> bool {
        self.block == block && depth >= self.min_depth && self.max_depth.is_none_or(|m| depth <= m)
    }
}

/// A set of basis names, ordered as a subsequence of the rank order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Selector(pub Vec<SelectorEntry>);

impl Selector {
    pub fn blocks(blocks: impl IntoIterator<Item = usize>) -> Self {
        Selector(blocks.into_iter().map(SelectorEntry::whole).collect())
    }

    pub fn contains(&self, name: &BasisName) -> bool {
        self.0.iter().any(|e| e.covers(name.block, name.depth()))
    }

    fn count_at(&self, layout: &Layout, depth: usize) -> Result<u64> {
        let mut total = 0u64;
        for e in self.0.iter().filter(|e| e.covers(e.block, depth)) {
            total = total.checked_add(layout.count(e.block, depth)?).ok_or(Error::RankOverflow)?;
        }
        Ok(total)
    }

    /// `None` when the selection is infinite.
    pub fn size(&self, layout: &Layout) -> Result<Option<u64>> {
        let mut total = 0u64;
        for e in &self.0 {
            let top = match e.max_depth {
                Some(m) => m,
                None if layout.block_is_finite(e.block) => 0,
                None => return Ok(None),
            };
            for d in e.min_depth..=top {
                total = total.checked_add(layout.count(e.block, d)?).ok_or(Error::RankOverflow)?;
            }
        }
        Ok(Some(total))
    }

    fn index_of(&self, layout: &Layout, name: &BasisName) -> Result<u64> {
        let d = name.depth();
        let mut idx = 0u64;
        for depth in 0..d {
            idx += self.count_at(layout, depth)?;
        }
        for e in self.0.iter().filter(|e| e.block < name.block && e.covers(e.block, d)) {
            idx += layout.count(e.block, d)?;
        }
        Ok(idx + layout.local_index(name)?)
    }

    fn name_at(&self, layout: &Layout, index: u64) -> Result<BasisName> {
        if let Some(size) = self.size(layout)? {
            if index >= size {
                return Err(Error::InvalidBasisMap(format!("selection index {index} beyond size {size}")));
            }
        }
        let mut rest = index;
        let mut depth = 0;
        loop {
            let c = self.count_at(layout, depth)?;
            if rest < c {
                break;
            }
            rest -= c;
            depth += 1;
        }
        let mut entries: Vec<&SelectorEntry> = self.0.iter().filter(|e| e.covers(e.block, depth)).collect();
        entries.sort_by_key(|e| e.block);
        for e in entries {
            let c = layout.count(e.block, depth)?;
            if rest < c {
                return layout.local_name(e.block, depth, rest);
            }
            rest -= c;
        }
        unreachable!("count_at covers the selected blocks")
    }

    /// Checks that the entries cover every name of `layout` at most once
    /// (`exhaustive` additionally requires each name at least once when
    /// combined with the other selectors, checked by the caller).
    fn validate(&self, layout: &Layout) -> Result<()> {
        for e in &self.0 {
            if e.block >= layout.blocks().len() {
                return Err(Error::InvalidBasisMap(format!("block {} out of range", e.block)));
            }
            if e.max_depth.is_some_and(|m| m < e.min_depth) {
                return Err(Error::InvalidBasisMap("empty depth range".into()));
            }
        }
        Ok(())
    }
}

/// One matched pair of selections.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Piece {
    pub source: Selector,
    pub target: Selector,
}

/// A rank permutation (identity when `pieces` is empty) followed by phases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relabel {
    pub(crate) maps: Option<PieceMap>,
    /// Keyed by source rank; absent means 1.
    pub(crate) phases: BTreeMap<u64, Scalar>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PieceMap {
    pub source: Layout,
    pub target: Layout,
    pub pieces: Vec<Piece>,
}

/// Depth intervals of each block must be hit exactly once over all selectors.
fn check_partition(layout: &Layout, selectors: &[&Selector]) -> Result<()> {
    for b in 0..layout.blocks().len() {
        let mut ranges: Vec<(usize, Option<usize>)> = selectors
            .iter()
            .flat_map(|s| s.0.iter())
            .filter(|e| e.block == b)
            .map(|e| (e.min_depth, e.max_depth))
            .collect();
        ranges.sort();
        let mut next = 0usize;
        let mut open = false;
        for (lo, hi) in ranges {
            if open || lo != next {
                return Err(Error::InvalidBasisMap(format!("block {b} not partitioned by depth")));
            }
            match hi {
                Some(h) => next = h + 1,
                None => open = true,
            }
        }
        let finite_ok = layout.block_is_finite(b) && next >= 1;
        if !open && !finite_ok {
            return Err(Error::InvalidBasisMap(format!("block {b} not fully covered")));
        }
    }
    Ok(())
}

impl PieceMap {
    pub fn new(source: Layout, target: Layout, pieces: Vec<Piece>) -> Result<Self> {
        if source.n() != target.n() {
            return Err(Error::RankMismatch(source.n(), target.n()));
        }
        for p in &pieces {
            p.source.validate(&source)?;
            p.target.validate(&target)?;
            let (a, b) = (p.source.size(&source)?, p.target.size(&target)?);
            if a != b {
                return Err(Error::InvalidBasisMap(format!("piece sizes differ: {a:?} vs {b:?}")));
            }
        }
        check_partition(&source, &pieces.iter().map(|p| &p.source).collect::<Vec<_>>())?;
        check_partition(&target, &pieces.iter().map(|p| &p.target).collect::<Vec<_>>())?;
        Ok(PieceMap { source, target, pieces })
    }

    fn forward(&self, rank: u64) -> Result<u64> {
        let name = self.source.name_at(rank)?;
        let piece = self.pieces.iter().find(|p| p.source.contains(&name)).expect("partition");
        let idx = piece.source.index_of(&self.source, &name)?;
        self.target.rank_of(&piece.target.name_at(&self.target, idx)?)
    }

    fn backward(&self, rank: u64) -> Result<u64> {
        let name = self.target.name_at(rank)?;
        let piece = self.pieces.iter().find(|p| p.target.contains(&name)).expect("partition");
        let idx = piece.target.index_of(&self.target, &name)?;
        self.source.rank_of(&piece.source.name_at(&self.source, idx)?)
    }

    fn inverse(&self) -> PieceMap {
        PieceMap {
            source: self.target.clone(),
            target: self.source.clone(),
            pieces: self.pieces.iter().map(|p| Piece { source: p.target.clone(), target: p.source.clone() }).collect(),
        }
    }
}

impl Relabel {
    pub fn identity() -> Self {
        Relabel { maps: None, phases: BTreeMap::new() }
    }

    pub fn new(maps: Option<PieceMap>, phases: BTreeMap<u64, Scalar>) -> Result<Self> {
        for (&r, z) in &phases {
            if !z.is_unimodular() {
                return Err(Error::NotUnimodular(r));
            }
        }
        let phases = phases.into_iter().filter(|(_, z)| !z.is_one()).collect();
        Ok(Relabel { maps, phases })
    }

    pub fn piece_map(&self) -> Option<&PieceMap> {
        self.maps.as_ref()
    }

    pub fn phases(&self) -> &BTreeMap<u64, Scalar> {
        &self.phases
    }

    fn forward(&self, rank: u64) -> Result<(u64, Scalar)> {
        let target = match &self.maps {
            None => rank,
            Some(m) => m.forward(rank)?,
        };
        Ok((target, self.phases.get(&rank).cloned().unwrap_or_else(Scalar::one)))
    }

    fn backward(&self, rank: u64) -> Result<(u64, Scalar)> {
        let source = match &self.maps {
            None => rank,
            Some(m) => m.backward(rank)?,
        };
        Ok((source, self.phases.get(&source).map(Scalar::conj).unwrap_or_else(Scalar::one)))
    }

    fn adjoint(&self) -> Result<Relabel> {
        let mut phases = BTreeMap::new();
        for (&r, z) in &self.phases {
            let (image, _) = self.forward(r)?;
            phases.insert(image, z.conj());
        }
        Ok(Relabel { maps: self.maps.as_ref().map(PieceMap::inverse), phases })
    }
}

/// How `ℓ²(ℕ)` splits as the space of `left ⊕ right` (block lists concatenated).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Split {
    pub left: Layout,
    pub right: Layout,
}

impl Split {
    pub fn new(left: Layout, right: Layout) -> Result<Self> {
        if left.n() != right.n() {
            return Err(Error::RankMismatch(left.n(), right.n()));
        }
        Ok(Split { left, right })
    }

    pub fn sum_layout(&self) -> Layout {
        self.left.concat(&self.right).expect("same n")
    }

    /// Summand (`false` = left) and local rank of a rank of the sum.
    pub fn split_rank(&self, rank: u64) -> Result<(bool, u64)> {
        let name = self.sum_layout().name_at(rank)?;
        let nl = self.left.blocks().len();
        if name.block < nl {
            Ok((false, self.left.rank_of(&name)?))
        } else {
            let local = BasisName { block: name.block - nl, ..name };
            Ok((true, self.right.rank_of(&local)?))
        }
    }

    pub fn embed_rank(&self, right: bool, local: u64) -> Result<u64> {
        let sum = self.sum_layout();
        if right {
            let mut name = self.right.name_at(local)?;
            name.block += self.left.blocks().len();
            sum.rank_of(&name)
        } else {
            sum.rank_of(&self.left.name_at(local)?)
        }
    }

    pub fn split(&self, v: &RankVector) -> Result<(RankVector, RankVector)> {
        let mut left = RankVector::zero();
        let mut right = RankVector::zero();
        for (&r, c) in v {
            match self.split_rank(r)? {
                (false, local) => left.add_term(local, c),
                (true, local) => right.add_term(local, c),
            }
        }
        Ok((left, right))
    }

    pub fn join(&self, left: &RankVector, right: &RankVector) -> Result<RankVector> {
        let mut out = RankVector::zero();
        for (&r, c) in left {
            out.add_term(self.embed_rank(false, r)?, c);
        }
        for (&r, c) in right {
            out.add_term(self.embed_rank(true, r)?, c);
        }
        Ok(out)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BasisUnitary {
    Relabel(Relabel),
    /// `W_0 W_1 ⋯ W_k`; the last factor acts first.
    Compose(Vec<BasisUnitary>),
    /// `W_1 ⊕ W_2` from `domain` coordinates to `codomain` coordinates.
    Sum { left: Box<BasisUnitary>, right: Box<BasisUnitary>, domain: Split, codomain: Split },
}

impl BasisUnitary {
    pub fn identity() -> Self {
        BasisUnitary::Relabel(Relabel::identity())
    }

    pub fn phases(phases: BTreeMap<u64, Scalar>) -> Result<Self> {
        Ok(BasisUnitary::Relabel(Relabel::new(None, phases)?))
    }

    pub fn relabel(map: PieceMap, phases: BTreeMap<u64, Scalar>) -> Result<Self> {
        Ok(BasisUnitary::Relabel(Relabel::new(Some(map), phases)?))
    }

    pub fn compose(factors: Vec<BasisUnitary>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                BasisUnitary::Compose(inner) => flat.extend(inner),
                f if f.is_identity() => {}
                f => flat.push(f),
            }
        }
        match flat.len() {
            0 => BasisUnitary::identity(),
            1 => flat.pop().unwrap(),
            _ => BasisUnitary::Compose(flat),
        }
    }

    pub fn direct_sum(left: BasisUnitary, right: BasisUnitary, domain: Split, codomain: Split) -> Result<Self> {
        if domain.left.n() != codomain.left.n() {
            return Err(Error::RankMismatch(domain.left.n(), codomain.left.n()));
        }
        Ok(BasisUnitary::Sum { left: Box::new(left), right: Box::new(right), domain, codomain })
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, BasisUnitary::Relabel(r) if r.maps.is_none() && r.phases.is_empty())
    }

    /// `W e_rank = phase · e_image`.
    pub fn map_rank(&self, rank: u64) -> Result<(u64, Scalar)> {
        match self {
            BasisUnitary::Relabel(r) => r.forward(rank),
            BasisUnitary::Compose(factors) => {
                let mut cur = (rank, Scalar::one());
                for f in factors.iter().rev() {
                    let (next, z) = f.map_rank(cur.0)?;
                    cur = (next, &cur.1 * &z);
                }
                Ok(cur)
            }
            BasisUnitary::Sum { left, right, domain, codomain } => {
                let (side, local) = domain.split_rank(rank)?;
                let (image, z) = if side { right.map_rank(local)? } else { left.map_rank(local)? };
                Ok((codomain.embed_rank(side, image)?, z))
            }
        }
    }

    /// `W* e_rank = phase · e_image`.
    pub fn map_rank_adjoint(&self, rank: u64) -> Result<(u64, Scalar)> {
        match self {
            BasisUnitary::Relabel(r) => r.backward(rank),
            BasisUnitary::Compose(factors) => {
                let mut cur = (rank, Scalar::one());
                for f in factors {
                    let (next, z) = f.map_rank_adjoint(cur.0)?;
                    cur = (next, &cur.1 * &z);
                }
                Ok(cur)
            }
            BasisUnitary::Sum { left, right, domain, codomain } => {
                let (side, local) = codomain.split_rank(rank)?;
                let (image, z) = if side { right.map_rank_adjoint(local)? } else { left.map_rank_adjoint(local)? };
                Ok((domain.embed_rank(side, image)?, z))
            }
        }
    }

    pub fn apply(&self, v: &RankVector) -> Result<RankVector> {
        let mut out = RankVector::zero();
        for (&r, c) in v {
            let (image, z) = self.map_rank(r)?;
            out.add_term(image, &(c * &z));
        }
        Ok(out)
    }

    pub fn apply_adjoint(&self, v: &RankVector) -> Result<RankVector> {
        let mut out = RankVector::zero();
        for (&r, c) in v {
            let (image, z) = self.map_rank_adjoint(r)?;
            out.add_term(image, &(c * &z));
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Result<BasisUnitary> {
        Ok(match self {
            BasisUnitary::Relabel(r) => BasisUnitary::Relabel(r.adjoint()?),
            BasisUnitary::Compose(factors) => {
                BasisUnitary::Compose(factors.iter().rev().map(|f| f.adjoint()).collect::<Result<_>>()?)
            }
            BasisUnitary::Sum { left, right, domain, codomain } => BasisUnitary::Sum {
                left: Box::new(left.adjoint()?),
                right: Box::new(right.adjoint()?),
                domain: codomain.clone(),
                codomain: domain.clone(),
            },
        })
    }
}
