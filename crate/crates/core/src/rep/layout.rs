//! Block structure of a representation space, canonical basis names, and
//! the rank bijection between names and `ℕ`.
//!
//! Every representation acts on `ℓ²(ℕ)` through this bijection, which is how
//! operators built from two different representations are composed.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BlockKind {
    /// Full Fock space: basis = all words, generators prepend.
    Fock,
    /// Essential block built on the periodic tails of a nonempty word `μ`.
    Cycle { word: Word },
}

impl BlockKind {
    pub fn cycle(word: impl Into<Word>) -> Self {
        BlockKind::Cycle { word: word.into() }
    }

    pub fn is_fock(&self) -> bool {
        matches!(self, BlockKind::Fock)
    }
}

/// Canonical basis name `(block, k, w)`; `k` is always 0 in a Fock block.
///
/// In a cycle block with word `μ` of period `p`, `(k, w)` stands for the string
/// `w · μ_k μ_{k+1} …` (indices mod `p`); it is canonical when `w` is empty or
/// its last letter differs from `μ_{k-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisName {
    pub block: usize,
    pub k: usize,
    pub word: Word,
}

impl BasisName {
    pub fn fock(block: usize, word: impl Into<Word>) -> Self {
        BasisName { block, k: 0, word: word.into() }
    }

    pub fn cycle(block: usize, k: usize, word: impl Into<Word>) -> Self {
        BasisName { block, k, word: word.into() }
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }
}

impl Ord for BasisName {
    fn cmp(&self, other: &Self) -> Ordering {
        self.depth()
            .cmp(&other.depth())
            .then(self.block.cmp(&other.block))
            .then(self.k.cmp(&other.k))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for BasisName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BasisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}:{}:{:?}", self.block, self.k, self.word)
    }
}

impl fmt::Display for BasisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn pow(n: usize, e: usize) -> Result<u64> {
    (n as u64).checked_pow(e as u32).ok_or(Error::RankOverflow)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::RankOverflow)
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::RankOverflow)
}

/// Index of `letters` among words of the same length (base-`n` digits).
fn word_index(letters: &[Letter], n: usize) -> Result<u64> {
    letters.iter().try_fold(0u64, |acc, &l| add(mul(acc, n as u64)?, u64::from(l - 1)))
}

fn word_at(mut index: u64, len: usize, n: usize) -> Word {
    let mut letters = vec![0; len];
    for slot in letters.iter_mut().rev() {
        *slot = (index % n as u64) as Letter + 1;
        index /= n as u64;
    }
    Word::new(letters)
}

/// The generator count `n` plus the ordered block list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Layout {
    n: usize,
    blocks: Vec<BlockKind>,
}

impl Layout {
    pub fn new(n: usize, blocks: Vec<BlockKind>) -> Result<Self> {
        if n == 0 {
            return Err(Error::parse("n", "must be positive"));
        }
        if blocks.is_empty() {
            return Err(Error::NoBlocks);
        }
        for block in &blocks {
            if let BlockKind::Cycle { word } = block {
                if word.is_empty() {
                    return Err(Error::EmptyCycle);
                }
                word.validate(n)?;
            }
        }
        Ok(Layout { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BlockKind] {
        &self.blocks
    }

    /// Concatenation of block lists (`self ⊕ other`).
    pub fn concat(&self, other: &Layout) -> Result<Layout> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(Layout { n: self.n, blocks })
    }

    pub fn block_is_finite(&self, block: usize) -> bool {
        self.n == 1 && !self.blocks[block].is_fock()
    }

    /// Finite iff `n = 1` and every block is a cycle.
    pub fn is_finite(&self) -> bool {
        (0..self.blocks.len()).all(|b| self.block_is_finite(b))
    }

    /// `None` when infinite-dimensional.
    pub fn dimension(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.blocks.iter().map(|b| match b {
            BlockKind::Cycle { word } => word.len() as u64,
            BlockKind::Fock => unreachable!(),
        }).sum())
    }

    /// Number of names of block `block` at exactly `depth`.
    pub fn count(&self, block: usize, depth: usize) -> Result<u64> {
        match &self.blocks[block] {
            BlockKind::Fock => pow(self.n, depth),
            BlockKind::Cycle { word } => {
                let p = word.len() as u64;
                if depth == 0 {
                    Ok(p)
                } else {
                    mul(mul(p, self.n as u64 - 1)?, pow(self.n, depth - 1)?)
                }
            }
        }
    }

    pub fn level_total(&self, depth: usize) -> Result<u64> {
        (0..self.blocks.len()).try_fold(0u64, |acc, b| add(acc, self.count(b, depth)?))
    }

    /// Number of names of depth `≤ depth`; these occupy ranks `0..rank_bound(depth)`.
    pub fn rank_bound(&self, depth: usize) -> Result<u64> {
        (0..=depth).try_fold(0u64, |acc, d| add(acc, self.level_total(d)?))
    }

    pub fn is_canonical(&self, name: &BasisName) -> bool {
        let Some(block) = self.blocks.get(name.block) else { return false };
        if name.word.validate(self.n).is_err() {
            return false;
        }
        match block {
            BlockKind::Fock => name.k == 0,
            BlockKind::Cycle { word: mu } => {
                let p = mu.len();
                name.k < p
                    && match name.word.last() {
                        None => true,
                        Some(last) => last != mu.letters()[(name.k + p - 1) % p],
                    }
            }
        }
    }

    fn check(&self, name: &BasisName) -> Result<()> {
        if self.is_canonical(name) {
            Ok(())
        } else {
            Err(Error::InvalidName(format!("{name:?}")))
        }
    }

    /// Position of `name` among the names of its block at its depth.
    pub fn local_index(&self, name: &BasisName) -> Result<u64> {
        self.check(name)?;
        let d = name.depth();
        match &self.blocks[name.block] {
            BlockKind::Fock => word_index(name.word.letters(), self.n),
            BlockKind::Cycle { word: mu } => {
                if d == 0 {
                    return Ok(name.k as u64);
                }
                let p = mu.len();
                let per_k = mul(self.n as u64 - 1, pow(self.n, d - 1)?)?;
                let letters = name.word.letters();
                let forbidden = mu.letters()[(name.k + p - 1) % p];
                let last = letters[d - 1];
                let pos = if last < forbidden { last - 1 } else { last - 2 };
                let prefix = word_index(&letters[..d - 1], self.n)?;
                add(add(mul(name.k as u64, per_k)?, mul(prefix, self.n as u64 - 1)?)?, u64::from(pos))
            }
        }
    }

    /// Inverse of [`Layout::local_index`].
    pub fn local_name(&self, block: usize, depth: usize, index: u64) -> Result<BasisName> {
        if index >= self.count(block, depth)? {
            return Err(Error::InvalidName(format!("local index {index} at depth {depth} of block {block}")));
        }
        match &self.blocks[block] {
            BlockKind::Fock => Ok(BasisName::fock(block, word_at(index, depth, self.n))),
            BlockKind::Cycle { word: mu } => {
                if depth == 0 {
                    return Ok(BasisName::cycle(block, index as usize, Word::empty()));
                }
                let p = mu.len();
                let per_k = (self.n as u64 - 1) * pow(self.n, depth - 1)?;
                let k = (index / per_k) as usize;
                let rem = index % per_k;
                let prefix = word_at(rem / (self.n as u64 - 1), depth - 1, self.n);
                let pos = (rem % (self.n as u64 - 1)) as Letter;
                let forbidden = mu.letters()[(k + p - 1) % p];
                let last = if pos + 1 < forbidden { pos + 1 } else { pos + 2 };
                let mut letters = prefix.letters().to_vec();
                letters.push(last);
                Ok(BasisName::cycle(block, k, Word::new(letters)))
            }
        }
    }

    pub fn rank_of(&self, name: &BasisName) -> Result<u64> {
        let d = name.depth();
        let local = self.local_index(name)?;
        let mut rank = 0u64;
        for depth in 0..d {
            rank = add(rank, self.level_total(depth)?)?;
        }
        for b in 0..name.block {
            rank = add(rank, self.count(b, d)?)?;
        }
        add(rank, local)
    }

    pub fn name_at(&self, rank: u64) -> Result<BasisName> {
        if let Some(dim) = self.dimension() {
            if rank >= dim {
                return Err(Error::RankOutOfRange(rank));
            }
        }
        let mut rest = rank;
        let mut depth = 0;
        loop {
            let level = self.level_total(depth)?;
            if rest < level {
                break;
            }
            rest -= level;
            depth += 1;
        }
        for b in 0..self.blocks.len() {
            let c = self.count(b, depth)?;
            if rest < c {
                return self.local_name(b, depth, rest);
            }
            rest -= c;
        }
        unreachable!("level total covers all blocks")
    }

    /// All canonical names of depth `≤ depth`, in rank order.
    pub fn basis_enum(&self, depth: usize) -> Result<Vec<BasisName>> {
        let bound = self.rank_bound(depth)?;
        (0..bound).map(|r| self.name_at(r)).collect()
    }

    /// Image of `name` under the untwisted generator `j`.
    pub fn base_gen(&self, j: Letter, name: &BasisName) -> BasisName {
        match &self.blocks[name.block] {
            BlockKind::Fock => BasisName::fock(name.block, name.word.prepend(j)),
            BlockKind::Cycle { word: mu } => {
                if !name.word.is_empty() {
                    return BasisName::cycle(name.block, name.k, name.word.prepend(j));
                }
                let p = mu.len();
                let prev = (name.k + p - 1) % p;
                if mu.letters()[prev] == j {
                    BasisName::cycle(name.block, prev, Word::empty())
                } else {
                    BasisName::cycle(name.block, name.k, Word::letter(j))
                }
            }
        }
    }

    /// Image of `name` under the adjoint of the untwisted generator `j`.
    pub fn base_gen_adj(&self, j: Letter, name: &BasisName) -> Option<BasisName> {
        if let Some(first) = name.word.first() {
            return (first == j).then(|| BasisName { block: name.block, k: name.k, word: name.word.tail() });
        }
        match &self.blocks[name.block] {
            BlockKind::Fock => None,
            BlockKind::Cycle { word: mu } => {
                let p = mu.len();
                (mu.letters()[name.k] == j).then(|| BasisName::cycle(name.block, (name.k + 1) % p, Word::empty()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fock(n: usize) -> Layout {
        Layout::new(n, vec![BlockKind::Fock]).unwrap()
    }

    #[test]
    fn fock_enumeration_depth_one() {
        let names = fock(2).basis_enum(1).unwrap();
        assert_eq!(names, vec![BasisName::fock(0, []), BasisName::fock(0, [1]), BasisName::fock(0, [2])]);
    }

    #[test]
    fn cycle_enumeration_examples() {
        let l = Layout::new(2, vec![BlockKind::cycle([1, 2])]).unwrap();
        assert_eq!(l.basis_enum(0).unwrap(), vec![BasisName::cycle(0, 0, []), BasisName::cycle(0, 1, [])]);
        let l = Layout::new(2, vec![BlockKind::cycle([1])]).unwrap();
        assert_eq!(l.basis_enum(1).unwrap(), vec![BasisName::cycle(0, 0, []), BasisName::cycle(0, 0, [2])]);
        assert!(!l.is_canonical(&BasisName::cycle(0, 0, [1])));
    }

    #[test]
    fn level_counts_match_formula() {
        for n in 1..=3usize {
            let l = Layout::new(n, vec![BlockKind::Fock, BlockKind::cycle([1]), BlockKind::cycle(vec![1; 1].into_iter().chain([n as u32]).collect::<Vec<_>>())]).unwrap();
            for d in 0..=4 {
                let names: Vec<_> = l.basis_enum(d).unwrap().into_iter().filter(|x| x.depth() == d).collect();
                for b in 0..3 {
                    let brute = names.iter().filter(|x| x.block == b).count() as u64;
                    assert_eq!(brute, l.count(b, d).unwrap(), "n={n} d={d} b={b}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_canonical_and_round_trips() {
        let l = Layout::new(3, vec![BlockKind::cycle([2, 3, 1]), BlockKind::Fock, BlockKind::cycle([3])]).unwrap();
        let names = l.basis_enum(3).unwrap();
        for (r, name) in names.iter().enumerate() {
            assert!(l.is_canonical(name));
            assert_eq!(l.rank_of(name).unwrap(), r as u64);
        }
        assert!(names.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn canonical_names_are_exhaustive_for_cycles() {
        // Brute force: every (k, w) with |w| ≤ 3 that passes the canonical test appears once.
        let l = Layout::new(2, vec![BlockKind::cycle([1, 2])]).unwrap();
        let listed = l.basis_enum(3).unwrap();
        let mut brute = Vec::new();
        for k in 0..2 {
            for len in 0..=3u32 {
                for code in 0..2u64.pow(len) {
                    let w = word_at(code, len as usize, 2);
                    let name = BasisName::cycle(0, k, w);
                    if l.is_canonical(&name) {
                        brute.push(name);
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(brute, listed);
    }

    #[test]
    fn finite_layouts() {
        let l = Layout::new(1, vec![BlockKind::cycle([1, 1]), BlockKind::cycle([1])]).unwrap();
        assert_eq!(l.dimension(), Some(3));
        assert!(l.name_at(3).is_err());
        assert_eq!(l.name_at(2).unwrap(), BasisName::cycle(1, 0, []));
        assert_eq!(fock(1).dimension(), None);
    }

    #[test]
    fn rejects_bad_layouts() {
        assert_eq!(Layout::new(2, vec![]), Err(Error::NoBlocks));
        assert_eq!(Layout::new(2, vec![BlockKind::cycle(Vec::<u32>::new())]), Err(Error::EmptyCycle));
        assert!(Layout::new(2, vec![BlockKind::cycle([3])]).is_err());
    }

    /// Infinite-string model: a cycle name denotes `w · μ_k μ_{k+1} …`; compare
    /// the first 12 letters of the image under prepending.
    fn expand(l: &Layout, name: &BasisName, len: usize) -> Vec<Letter> {
        let BlockKind::Cycle { word: mu } = &l.blocks()[name.block] else { panic!() };
        let mut s = name.word.letters().to_vec();
        let p = mu.len();
        let mut idx = name.k;
        while s.len() < len {
            s.push(mu.letters()[idx % p]);
            idx += 1;
        }
        s
    }

    #[test]
    fn cycle_action_matches_string_model() {
        let l = Layout::new(2, vec![BlockKind::cycle([1, 2]), BlockKind::cycle([2, 2, 1])]).unwrap();
        for name in l.basis_enum(3).unwrap() {
            for j in 1..=2 {
                let image = l.base_gen(j, &name);
                assert!(l.is_canonical(&image));
                let mut want = vec![j];
                want.extend(expand(&l, &name, 11));
                assert_eq!(expand(&l, &image, 12), want, "{name:?} under {j}");
                assert_eq!(l.base_gen_adj(j, &image), Some(name.clone()));
            }
        }
    }
}
