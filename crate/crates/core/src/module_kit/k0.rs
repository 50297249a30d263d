//! `(K₀(A), [1_A])` as `ℤ^r ⊕ ⊕_j ℤ/m_j` with a distinguished class.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module_kit::FDAlgebra;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K0Data {
    pub free_rank: usize,
    /// Orders of the cyclic torsion summands, each at least 2.
    pub torsion: Vec<u64>,
    /// Coordinates of `[1_A]`: free part first, then torsion.
    pub unit: Vec<i64>,
}

impl K0Data {
    /// `ℤ/m` with `[1] = unit`; `ℤ/1` is the zero group.
    pub fn cyclic(m: u64, unit: i64) -> Self {
        if m == 1 {
            K0Data { free_rank: 0, torsion: vec![], unit: vec![] }
        } else {
            K0Data { free_rank: 0, torsion: vec![m], unit: vec![unit] }
        }
    }

    pub fn zero() -> Self {
        Self::cyclic(1, 0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.unit.len() != self.free_rank + self.torsion.len() {
            return Err(Error::InconsistentK0(format!(
                "unit has {} coordinates, group has {}",
                self.unit.len(),
                self.free_rank + self.torsion.len()
            )));
        }
        if let Some(m) = self.torsion.iter().find(|&&m| m < 2) {
            return Err(Error::InconsistentK0(format!("torsion order {m} is below 2")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum UnitOrder {
    Finite(u64),
    Infinite,
}

/// The least `m ≥ 1` with `m · [1_A] = 0`.
pub fn unit_order(k: &K0Data) -> Result<UnitOrder> {
    k.validate()?;
    if k.unit[..k.free_rank].iter().any(|&c| c != 0) {
        return Ok(UnitOrder::Infinite);
    }
    let mut order = 1u64;
    for (&m, &c) in k.torsion.iter().zip(&k.unit[k.free_rank..]) {
        let c = c.rem_euclid(m as i64) as u64;
        order = order.lcm(&(m / m.gcd(&c)));
    }
    Ok(UnitOrder::Finite(order))
}

/// Invariant basis number: `[1_A]` has infinite additive order. This is the
/// only place where the direction of the criterion is fixed.
pub fn ibn(k: &K0Data) -> bool {
    matches!(unit_order(k), Ok(UnitOrder::Infinite))
}

/// `K₀(⊕ M_{k_i}) = ℤ^m` with `[1] = (k_1, …, k_m)`.
pub fn fd_to_k0(a: &FDAlgebra) -> K0Data {
    K0Data { free_rank: a.blocks().len(), torsion: vec![], unit: a.blocks().iter().map(|&k| k as i64).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_order_examples() {
        let z = K0Data { free_rank: 1, torsion: vec![], unit: vec![1] };
        assert_eq!(unit_order(&z).unwrap(), UnitOrder::Infinite);
        assert_eq!(unit_order(&K0Data::cyclic(2, 1)).unwrap(), UnitOrder::Finite(2));
        let mixed = K0Data { free_rank: 1, torsion: vec![2], unit: vec![0, 1] };
        assert_eq!(unit_order(&mixed).unwrap(), UnitOrder::Finite(2));
        let lcm = K0Data { free_rank: 0, torsion: vec![4, 6], unit: vec![2, 3] };
        assert_eq!(unit_order(&lcm).unwrap(), UnitOrder::Finite(2));
        assert_eq!(unit_order(&K0Data::zero()).unwrap(), UnitOrder::Finite(1));
        assert!(unit_order(&K0Data { free_rank: 1, torsion: vec![], unit: vec![] }).is_err());
        assert!(unit_order(&K0Data { free_rank: 0, torsion: vec![1], unit: vec![0] }).is_err());
    }

    #[test]
    fn ibn_examples() {
        let a = FDAlgebra::new(vec![2, 3]).unwrap();
        assert_eq!(fd_to_k0(&a), K0Data { free_rank: 2, torsion: vec![], unit: vec![2, 3] });
        assert_eq!(fd_to_k0(&FDAlgebra::complex()), K0Data { free_rank: 1, torsion: vec![], unit: vec![1] });
        assert!(ibn(&fd_to_k0(&a)));
        assert!(!ibn(&K0Data::zero()));
        for n in 2..=6u64 {
            assert!(!ibn(&K0Data::cyclic(n - 1, 1)));
            assert_eq!(unit_order(&K0Data::cyclic(n - 1, 1)).unwrap(), UnitOrder::Finite(n - 1));
        }
    }

    #[test]
    fn k0_format() {
        let k: K0Data = serde_json::from_str(r#"{"free_rank":1,"torsion":[2],"unit":[0,1]}"#).unwrap();
        assert_eq!(k, K0Data { free_rank: 1, torsion: vec![2], unit: vec![0, 1] });
    }

    proptest! {
        #[test]
        fn finite_order_annihilates_the_unit(torsion in proptest::collection::vec(2u64..12, 0..4), seed in any::<u64>()) {
            let unit: Vec<i64> = torsion.iter().enumerate().map(|(i, &m)| ((seed >> (i * 8)) % (3 * m)) as i64 - m as i64).collect();
            let k = K0Data { free_rank: 0, torsion: torsion.clone(), unit: unit.clone() };
            let UnitOrder::Finite(order) = unit_order(&k).unwrap() else { panic!() };
            let kills = |t: u64| torsion.iter().zip(&unit).all(|(&m, &c)| (c * t as i64).rem_euclid(m as i64) == 0);
            prop_assert!(kills(order));
            prop_assert!((1..order).all(|t| !kills(t)));
        }

        #[test]
        fn every_fd_algebra_has_ibn(blocks in proptest::collection::vec(1usize..6, 1..5)) {
            prop_assert!(ibn(&fd_to_k0(&FDAlgebra::new(blocks).unwrap())));
        }
    }
}
