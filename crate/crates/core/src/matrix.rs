//! Square matrices over the exact scalars.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An `n×n` matrix of exact scalars, stored row-major; entry `(j, k)` is `u_{jk}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    n: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("row of length {} in {n}x{n} matrix", bad.len())));
        }
        Ok(ScalarMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        ScalarMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { Scalar::one() } else { Scalar::zero() })
    }

    /// Permutation matrix sending basis vector `k` to `perm[k]`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self::from_fn(perm.len(), |r, c| if perm[c] == r { Scalar::one() } else { Scalar::zero() })
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        Self::from_fn(entries.len(), |r, c| if r == c { entries[r].clone() } else { Scalar::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.data[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(c, r).conj())
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| Scalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(Self::from_fn(self.n, |r, c| self.get(r, c) + other.get(r, c)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(Self::from_fn(self.n, |r, c| self.get(r, c) - other.get(r, c)))
    }

    pub fn scale(&self, z: &Scalar) -> Self {
        Self::from_fn(self.n, |r, c| self.get(r, c) * z)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(Self::from_fn(self.n, |r, c| (0..self.n).map(|k| self.get(r, k) * other.get(k, c)).sum()))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| (0..self.n).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }

    /// Exact test of `U*U = UU* = I`.
    pub fn is_unitary(&self) -> bool {
        let adj = self.adjoint();
        let left = adj.mul(self).expect("same size");
        let right = self.mul(&adj).expect("same size");
        left.is_identity() && right.is_identity()
    }

    pub fn require_unitary(&self) -> Result<()> {
        if self.is_unitary() {
            Ok(())
        } else {
            Err(Error::NotUnitary)
        }
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

impl Serialize for ScalarMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScalarMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        ScalarMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitarity_checks() {
        assert!(ScalarMatrix::identity(3).is_unitary());
        assert!(ScalarMatrix::permutation(&[1, 0]).is_unitary());
        let rot = ScalarMatrix::from_rows(vec![
            vec![Scalar::ratio(3, 5), Scalar::ratio(-4, 5)],
            vec![Scalar::ratio(4, 5), Scalar::ratio(3, 5)],
        ])
        .unwrap();
        assert!(rot.is_unitary());
        let shear = ScalarMatrix::from_rows(vec![vec![Scalar::one(), Scalar::one()], vec![Scalar::zero(), Scalar::one()]]).unwrap();
        assert!(!shear.is_unitary());
    }

    #[test]
    fn adjoint_of_phase_swap() {
        let u = ScalarMatrix::from_rows(vec![vec![Scalar::zero(), Scalar::i()], vec![Scalar::one(), Scalar::zero()]]).unwrap();
        let expected = ScalarMatrix::from_rows(vec![vec![Scalar::zero(), Scalar::one()], vec![-Scalar::i(), Scalar::zero()]]).unwrap();
        assert_eq!(u.adjoint(), expected);
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(ScalarMatrix::from_rows(vec![vec![Scalar::one()], vec![]]).is_err());
        assert!(serde_json::from_str::<ScalarMatrix>(r#"[["0","1"],["1","0"]]"#).unwrap().is_unitary());
    }
}
