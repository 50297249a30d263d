//! Finitely supported vectors with exact coefficients.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;

use crate::scalar::Scalar;

/// A finitely supported vector over an ordered basis `K`.
///
/// Never stores an exact zero coefficient, so structural equality is
/// vector equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVector<K: Ord> {
    entries: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for SparseVector<K> {
    fn default() -> Self {
        SparseVector { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVector<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        let mut v = Self::default();
        v.entries.insert(key, Scalar::one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(terms: I) -> Self {
        let mut v = Self::default();
        for (k, c) in terms {
            v.add_term(k, &c);
        }
        v
    }

    /// Adds `coef · e_key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(coef.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coef;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        for (k, c) in &other.entries {
            self.add_term(k.clone(), &(c * coef));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.entries {
            self.add_term(k.clone(), c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, coef: &Scalar) -> Self {
        if coef.is_zero() {
            return Self::default();
        }
        SparseVector { entries: self.entries.iter().map(|(k, c)| (k.clone(), c * coef)).collect() }
    }

    /// `⟨self, other⟩ = Σ conj(self_b)·other_b`, antilinear in the first slot.
    pub fn inner(&self, other: &Self) -> Scalar {
        let (small, large, swap) = if self.entries.len() <= other.entries.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Scalar::zero();
        for (k, c) in &small.entries {
            if let Some(d) = large.entries.get(k) {
                let term = if swap { &d.conj() * c } else { &c.conj() * d };
                acc += &term;
            }
        }
        acc
    }

    /// Applies `f` to each key, summing coefficients that land on one key.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> SparseVector<L> {
        let mut out = SparseVector::default();
        for (k, c) in &self.entries {
            out.add_term(f(k), c);
        }
        out
    }
}

impl<K: Ord> SparseVector<K> {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.entries.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.entries.keys()
    }
}

impl<'a, K: Ord> IntoIterator for &'a SparseVector<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for SparseVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn arb_vec() -> impl Strategy<Value = SparseVector<u8>> {
        proptest::collection::vec((0u8..6, -5i64..5, -5i64..5), 0..6).prop_map(|terms| {
            SparseVector::from_terms(terms.into_iter().map(|(k, a, b)| (k, Scalar::complex(a, 1, b, 1))))
        })
    }

    #[test]
    fn cancellation_removes_entries() {
        let mut v = SparseVector::basis(3u8);
        v.add_term(3, &Scalar::from_int(-1));
        assert!(v.is_zero());
    }

    proptest! {
        #[test]
        fn inner_product_is_hermitian(x in arb_vec(), y in arb_vec()) {
            prop_assert_eq!(x.inner(&y), y.inner(&x).conj());
        }

        #[test]
        fn self_inner_is_nonnegative_real(x in arb_vec()) {
            let n = x.inner(&x);
            prop_assert!(n.is_real());
            prop_assert!(!n.re().is_negative());
            prop_assert_eq!(n.is_zero(), x.is_empty());
        }
    }
}
