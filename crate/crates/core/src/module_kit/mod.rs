//! The free Hilbert module `Aⁿ` over a finite-dimensional C*-algebra
//! `A = ⊕ M_{k_i}`, and K₀ data for the invariant basis number test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::scalar::Scalar;

pub mod k0;

pub use k0::{fd_to_k0, ibn, unit_order, K0Data, UnitOrder};

/// `⊕ M_{k_i}` described by its block sizes.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FdRepr", into = "FdRepr")]
pub struct FDAlgebra {
    blocks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FdRepr {
    blocks: Vec<usize>,
}

impl TryFrom<FdRepr> for FDAlgebra {
    type Error = Error;

    fn try_from(raw: FdRepr) -> Result<Self> {
        FDAlgebra::new(raw.blocks)
    }
}

impl From<FDAlgebra> for FdRepr {
    fn from(a: FDAlgebra) -> Self {
        FdRepr { blocks: a.blocks }
    }
}

impl FDAlgebra {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::ShapeMismatch("block sizes must be a nonempty list of positive integers".into()));
        }
        Ok(FDAlgebra { blocks })
    }

    /// `ℂ`.
    pub fn complex() -> Self {
        FDAlgebra { blocks: vec![1] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn zero(&self) -> FdElement {
        FdElement { blocks: self.blocks.iter().map(|&k| ScalarMatrix::zeros(k)).collect() }
    }

    pub fn one(&self) -> FdElement {
        FdElement { blocks: self.blocks.iter().map(|&k| ScalarMatrix::identity(k)).collect() }
    }

    pub fn scalar(&self, z: &Scalar) -> FdElement {
        self.one().scale(z)
    }

    pub fn element(&self, blocks: Vec<ScalarMatrix>) -> Result<FdElement> {
        let e = FdElement { blocks };
        self.check(&e)?;
        Ok(e)
    }

    pub fn check(&self, e: &FdElement) -> Result<()> {
        if e.blocks.len() != self.blocks.len() || e.blocks.iter().zip(&self.blocks).any(|(m, &k)| m.dim() != k) {
            return Err(Error::ShapeMismatch(format!("element does not belong to ⊕M_k with k = {:?}", self.blocks)));
        }
        Ok(())
    }

    /// The standard basis vector `e_i` of `Aⁿ` (`i` from 0).
    pub fn standard(&self, n: usize, i: usize) -> ModuleVector {
        ModuleVector { coords: (0..n).map(|c| if c == i { self.one() } else { self.zero() }).collect() }
    }

    pub fn standard_basis(&self, n: usize) -> Vec<ModuleVector> {
        (0..n).map(|i| self.standard(n, i)).collect()
    }

    pub fn identity_matrix(&self, n: usize) -> ModuleMatrix {
        ModuleMatrix::from_fn(n, |r, c| if r == c { self.one() } else { self.zero() })
    }

    /// The matrix of `θ_{e_i, e_j}: x ↦ e_i⟨e_j, x⟩`.
    pub fn matrix_unit(&self, n: usize, i: usize, j: usize) -> ModuleMatrix {
        ModuleMatrix::from_fn(n, |r, c| if (r, c) == (i, j) { self.one() } else { self.zero() })
    }
}

/// An element of `⊕ M_{k_i}`, one square matrix per block.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FdElement {
    blocks: Vec<ScalarMatrix>,
}

impl FdElement {
    pub fn blocks(&self) -> &[ScalarMatrix] {
        &self.blocks
    }

    fn zip(&self, other: &Self, f: impl Fn(&ScalarMatrix, &ScalarMatrix) -> Result<ScalarMatrix>) -> Result<Self> {
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::ShapeMismatch("elements of different algebras".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(FdElement { blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, ScalarMatrix::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, ScalarMatrix::sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, ScalarMatrix::mul)
    }

    pub fn scale(&self, z: &Scalar) -> Self {
        FdElement { blocks: self.blocks.iter().map(|m| m.scale(z)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        FdElement { blocks: self.blocks.iter().map(ScalarMatrix::adjoint).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(ScalarMatrix::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.blocks.iter().all(ScalarMatrix::is_identity)
    }

    pub fn is_unitary(&self) -> bool {
        self.blocks.iter().all(ScalarMatrix::is_unitary)
    }
}

/// `x ∈ Aⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleVector {
    coords: Vec<FdElement>,
}

impl ModuleVector {
    pub fn new(coords: Vec<FdElement>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ShapeMismatch("empty module vector".into()));
        }
        Ok(ModuleVector { coords })
    }

    pub fn coords(&self) -> &[FdElement] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The right action `x · a`.
    pub fn right_mul(&self, a: &FdElement) -> Result<Self> {
        Ok(ModuleVector { coords: self.coords.iter().map(|c| c.mul(a)).collect::<Result<_>>()? })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(ModuleVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect::<Result<_>>()? })
    }
}

fn same_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("lengths {a} and {b} differ")))
    }
}

/// `⟨x, y⟩ = Σ x_i* y_i`.
pub fn module_inner(x: &ModuleVector, y: &ModuleVector) -> Result<FdElement> {
    same_len(x.len(), y.len())?;
    let mut acc = x.coords[0].adjoint().mul(&y.coords[0])?;
    for (a, b) in x.coords.iter().zip(&y.coords).skip(1) {
        acc = acc.add(&a.adjoint().mul(b)?)?;
    }
    Ok(acc)
}

/// `⟨f_i, f_j⟩ = δ_ij 1_A` for all pairs.
pub fn check_orthonormal(family: &[ModuleVector]) -> Result<bool> {
    for (i, f) in family.iter().enumerate() {
        for (j, g) in family.iter().enumerate() {
            let p = module_inner(f, g)?;
            let ok = if i == j { p.is_one() } else { p.is_zero() };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The coefficients `⟨f_i, x⟩`, so that `x = Σ f_i ⟨f_i, x⟩`.
pub fn basis_expand(x: &ModuleVector, basis: &[ModuleVector]) -> Result<Vec<FdElement>> {
    if basis.len() != x.len() || !check_orthonormal(basis)? {
        return Err(Error::NotOrthonormal);
    }
    basis.iter().map(|f| module_inner(f, x)).collect()
}

/// `Σ f_i c_i`.
pub fn basis_combine(basis: &[ModuleVector], coefs: &[FdElement]) -> Result<ModuleVector> {
    same_len(basis.len(), coefs.len())?;
    let mut acc = basis[0].right_mul(&coefs[0])?;
    for (f, c) in basis.iter().zip(coefs).skip(1) {
        acc = acc.add(&f.right_mul(c)?)?;
    }
    Ok(acc)
}

/// An element of `M_n(A) ≅ L(Aⁿ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleMatrix {
    entries: Vec<Vec<FdElement>>,
}

impl ModuleMatrix {
    pub fn new(entries: Vec<Vec<FdElement>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("module matrix must be a nonempty square".into()));
        }
        Ok(ModuleMatrix { entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> FdElement) -> Self {
        ModuleMatrix { entries: (0..n).map(|r| (0..n).map(|c| f(r, c)).collect()).collect() }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &FdElement {
        &self.entries[r][c]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n(), |r, c| self.entries[c][r].adjoint())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_len(self.n(), other.n())?;
        let n = self.n();
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let mut acc = self.entries[r][0].mul(&other.entries[0][c])?;
                for k in 1..n {
                    acc = acc.add(&self.entries[r][k].mul(&other.entries[k][c])?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(ModuleMatrix { entries: rows })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n()).all(|r| (0..self.n()).all(|c| if r == c { self.entries[r][c].is_one() } else { self.entries[r][c].is_zero() }))
    }

    /// The columns `U e_j`.
    pub fn columns(&self) -> Vec<ModuleVector> {
        (0..self.n()).map(|c| ModuleVector { coords: (0..self.n()).map(|r| self.entries[r][c].clone()).collect() }).collect()
    }
}

/// `Vx = Σ_j e_j Σ_i v_{ji} ⟨e_i, x⟩`.
pub fn apply_matrix(v: &ModuleMatrix, x: &ModuleVector) -> Result<ModuleVector> {
    same_len(v.n(), x.len())?;
    let mut coords = Vec::with_capacity(v.n());
    for row in &v.entries {
        let mut acc = row[0].mul(&x.coords[0])?;
        for (a, b) in row.iter().zip(&x.coords).skip(1) {
            acc = acc.add(&a.mul(b)?)?;
        }
        coords.push(acc);
    }
    Ok(ModuleVector { coords })
}

/// `U*U = UU* = I`.
pub fn check_unitary_matrix(u: &ModuleMatrix) -> Result<bool> {
    let adj = u.adjoint();
    Ok(adj.mul(u)?.is_identity() && u.mul(&adj)?.is_identity())
}

/// `u_{ij} = ⟨e_i, f_j⟩`, the unitary with `U e_i = f_i`.
pub fn basis_to_unitary(basis: &[ModuleVector]) -> Result<ModuleMatrix> {
    let n = basis.len();
    if n == 0 || basis.iter().any(|f| f.len() != n) || !check_orthonormal(basis)? {
        return Err(Error::NotOrthonormal);
    }
    let alg_one = basis[0].coords[0].adjoint().mul(&basis[0].coords[0])?;
    let zero = alg_one.sub(&alg_one)?;
    for i in 0..n {
        let e_i = ModuleVector { coords: (0..n).map(|c| if c == i { one_like(&zero) } else { zero.clone() }).collect() };
        let coefs: Vec<FdElement> = basis.iter().map(|f| module_inner(f, &e_i)).collect::<Result<_>>()?;
        if basis_combine(basis, &coefs)? != e_i {
            return Err(Error::NotGenerating);
        }
    }
    Ok(ModuleMatrix::from_fn(n, |i, j| basis[j].coords[i].clone()))
}

fn one_like(zero: &FdElement) -> FdElement {
    FdElement { blocks: zero.blocks.iter().map(|m| ScalarMatrix::identity(m.dim())).collect() }
}
