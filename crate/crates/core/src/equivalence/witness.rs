//! Free and quasifree equivalence witnesses.

use std::sync::Arc;

use crate::equivalence::expr::OperatorExpr;
use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::rep::{BasisUnitary, Split};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Scalar,
    Bounded,
}

/// `U = [u_{jk}]` witnessing `ω(v_i) = Σ_j τ(v_j) u_{ji}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeWitness {
    n: usize,
    entries: Vec<Vec<OperatorExpr>>,
}

impl FreeWitness {
    pub fn identity(n: usize) -> Self {
        Self::from_matrix(&ScalarMatrix::identity(n)).expect("identity is unitary")
    }

    /// A scalar witness; the matrix must be exactly unitary.
    pub fn from_matrix(u: &ScalarMatrix) -> Result<Self> {
        u.require_unitary()?;
        let entries = u.rows().into_iter().map(|row| row.into_iter().map(OperatorExpr::Scalar).collect()).collect();
        Ok(FreeWitness { n: u.dim(), entries })
    }

    /// A bounded witness. Entries that are all scalars must form a unitary.
    pub fn from_entries(entries: Vec<Vec<OperatorExpr>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("witness must be a nonempty square matrix".into()));
        }
        let w = FreeWitness { n, entries };
        if let Some(m) = w.scalar_matrix() {
            m.require_unitary()?;
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, j: usize, k: usize) -> &OperatorExpr {
        &self.entries[j][k]
    }

    pub fn entries(&self) -> &[Vec<OperatorExpr>] {
        &self.entries
    }

    pub fn flavor(&self) -> Flavor {
        if self.entries.iter().flatten().all(|e| e.as_scalar().is_some()) {
            Flavor::Scalar
        } else {
            Flavor::Bounded
        }
    }

    pub fn scalar_matrix(&self) -> Option<ScalarMatrix> {
        let mut rows = Vec::with_capacity(self.n);
        for row in &self.entries {
            rows.push(row.iter().map(|e| e.as_scalar().cloned()).collect::<Option<Vec<Scalar>>>()?);
        }
        ScalarMatrix::from_rows(rows).ok()
    }

    /// `(U*)_{jk} = u_{kj}*`.
    pub fn adjoint(&self) -> Self {
        let entries = (0..self.n).map(|j| (0..self.n).map(|k| self.entries[k][j].adjoint()).collect()).collect();
        FreeWitness { n: self.n, entries }
    }

    fn map_entries(&self, f: impl Fn(&OperatorExpr) -> OperatorExpr) -> Self {
        FreeWitness { n: self.n, entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }
}

/// `(W, U)` witnessing `ω(v_i) = Σ_j W τ(v_j) W* u_{ji}` with
/// `W: H_τ → H_ω` and the `u_{ji}` acting on `H_ω`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasifreeWitness {
    pub w: Arc<BasisUnitary>,
    pub u: FreeWitness,
}

impl QuasifreeWitness {
    pub fn new(w: BasisUnitary, u: FreeWitness) -> Self {
        QuasifreeWitness { w: Arc::new(w), u }
    }

    pub fn free(u: FreeWitness) -> Self {
        Self::new(BasisUnitary::identity(), u)
    }

    pub fn identity(n: usize) -> Self {
        Self::free(FreeWitness::identity(n))
    }
}

/// If `U` witnesses `ω ~ τ` then `U*` witnesses `τ ~ ω`.
pub fn invert_free_witness(u: &FreeWitness) -> FreeWitness {
    u.adjoint()
}

/// From `ω = σ_τ ∘ U` and `τ = σ_κ ∘ W₂`: `ω = σ_κ ∘ (W₂ U)`.
pub fn compose_free_witness(u: &FreeWitness, w2: &FreeWitness) -> Result<FreeWitness> {
    if u.n != w2.n {
        return Err(Error::RankMismatch(u.n, w2.n));
    }
    let n = u.n;
    let entries = (0..n)
        .map(|l| {
            (0..n)
                .map(|i| OperatorExpr::sum((0..n).map(|j| OperatorExpr::product(vec![w2.entries[l][j].clone(), u.entries[j][i].clone()])).collect()))
                .collect()
        })
        .collect();
    Ok(FreeWitness { n, entries })
}

/// `(W, U) ↦ (W*, [W* u_{kj}* W])`.
pub fn invert_quasifree_witness(q: &QuasifreeWitness) -> Result<QuasifreeWitness> {
    let w_adj = Arc::new(q.w.adjoint()?);
    let v = q.u.adjoint().map_entries(|e| {
        OperatorExpr::product(vec![OperatorExpr::basis_u_adj(&q.w), e.clone(), OperatorExpr::basis_u(&q.w)])
    });
    Ok(QuasifreeWitness { w: w_adj, u: v })
}

/// `q1 = (W₁, U)` for `(ω, τ)` and `q2 = (W₂, V)` for `(τ, κ)` give
/// `(W₁W₂, T)` for `(ω, κ)` with `t_{ki} = Σ_j W₁ v_{kj} W₁* u_{ji}`.
pub fn compose_quasifree_witness(q1: &QuasifreeWitness, q2: &QuasifreeWitness) -> Result<QuasifreeWitness> {
    if q1.u.n != q2.u.n {
        return Err(Error::RankMismatch(q1.u.n, q2.u.n));
    }
    let n = q1.u.n;
    let entries = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    OperatorExpr::sum(
                        (0..n)
                            .map(|j| {
                                OperatorExpr::product(vec![
                                    OperatorExpr::basis_u(&q1.w),
                                    q2.u.entries[k][j].clone(),
                                    OperatorExpr::basis_u_adj(&q1.w),
                                    q1.u.entries[j][i].clone(),
                                ])
                            })
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    let w = BasisUnitary::compose(vec![(*q1.w).clone(), (*q2.w).clone()]);
    Ok(QuasifreeWitness::new(w, FreeWitness { n, entries }))
}

/// The direct sum of witnesses for `(ω₁, τ₁)` and `(ω₂, τ₂)`: `W₁ ⊕ W₂` and
/// `u_{jk} = u⁽¹⁾_{jk} ⊕ u⁽²⁾_{jk}`. `tau` splits `H_{τ₁⊕τ₂}` and `omega`
/// splits `H_{ω₁⊕ω₂}`. The result stays scalar only when both summands carry
/// the same scalar matrix.
pub fn direct_sum_witness(q1: &QuasifreeWitness, q2: &QuasifreeWitness, tau: &Split, omega: &Split) -> Result<QuasifreeWitness> {
    if q1.u.n != q2.u.n {
        return Err(Error::RankMismatch(q1.u.n, q2.u.n));
    }
    let n = q1.u.n;
    let w = if q1.w.is_identity() && q2.w.is_identity() && tau == omega {
        BasisUnitary::identity()
    } else {
        BasisUnitary::direct_sum((*q1.w).clone(), (*q2.w).clone(), tau.clone(), omega.clone())?
    };
    let same_scalar = matches!((q1.u.scalar_matrix(), q2.u.scalar_matrix()), (Some(a), Some(b)) if a == b);
    let u = if same_scalar {
        q1.u.clone()
    } else {
        let entries = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| OperatorExpr::direct_sum(q1.u.entries[j][k].clone(), q2.u.entries[j][k].clone(), omega.clone(), omega.clone()))
                    .collect()
            })
            .collect();
        FreeWitness { n, entries }
    };
    Ok(QuasifreeWitness::new(w, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<Scalar>>) -> ScalarMatrix {
        ScalarMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert_free_witness(&FreeWitness::identity(2)), FreeWitness::identity(2));
        let swap = FreeWitness::from_matrix(&ScalarMatrix::permutation(&[1, 0])).unwrap();
        assert_eq!(invert_free_witness(&swap), swap);
        let u = FreeWitness::from_matrix(&m(vec![vec![Scalar::zero(), Scalar::i()], vec![Scalar::one(), Scalar::zero()]])).unwrap();
        let want = m(vec![vec![Scalar::zero(), Scalar::one()], vec![-Scalar::i(), Scalar::zero()]]);
        assert_eq!(invert_free_witness(&u).scalar_matrix(), Some(want));
    }

    #[test]
    fn compose_examples() {
        let swap = FreeWitness::from_matrix(&ScalarMatrix::permutation(&[1, 0])).unwrap();
        assert_eq!(compose_free_witness(&FreeWitness::identity(2), &swap).unwrap(), swap);
        assert_eq!(compose_free_witness(&swap, &swap).unwrap(), FreeWitness::identity(2));
        assert!(compose_free_witness(&swap, &FreeWitness::identity(3)).is_err());
    }

    #[test]
    fn quasifree_scalar_collapses() {
        let u = m(vec![vec![Scalar::zero(), Scalar::i()], vec![Scalar::one(), Scalar::zero()]]);
        let w = BasisUnitary::phases([(2, Scalar::i())].into()).unwrap();
        let q = QuasifreeWitness::new(w.clone(), FreeWitness::from_matrix(&u).unwrap());
        let inv = invert_quasifree_witness(&q).unwrap();
        assert_eq!(*inv.w, w.adjoint().unwrap());
        assert_eq!(inv.u.scalar_matrix(), Some(u.adjoint()));
        let id = QuasifreeWitness::identity(2);
        assert_eq!(invert_quasifree_witness(&id).unwrap(), id);
        let both = compose_quasifree_witness(&q, &inv).unwrap();
        assert_eq!(both.u.scalar_matrix(), Some(ScalarMatrix::identity(2)));
        let pure = compose_quasifree_witness(&QuasifreeWitness::new(w.clone(), FreeWitness::identity(2)), &QuasifreeWitness::new(w.clone(), FreeWitness::identity(2))).unwrap();
        assert_eq!(pure.u, FreeWitness::identity(2));
        assert_eq!(*pure.w, BasisUnitary::compose(vec![w.clone(), w]));
    }

    #[test]
    fn scalar_entries_must_be_unitary() {
        let bad = vec![vec![OperatorExpr::one(), OperatorExpr::one()], vec![OperatorExpr::zero(), OperatorExpr::one()]];
        assert_eq!(FreeWitness::from_entries(bad), Err(Error::NotUnitary));
        assert!(FreeWitness::from_entries(vec![vec![OperatorExpr::one()], vec![]]).is_err());
    }
}
