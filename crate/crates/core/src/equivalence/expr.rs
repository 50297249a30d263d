//! Operator expressions acting on rank vectors.

use std::sync::Arc;

use crate::error::Result;
use crate::rep::{BasisUnitary, RankVector, Representation, Split};
use crate::scalar::Scalar;
use crate::word::Letter;

/// An operator built from generators, basis unitaries and scalars.
/// `Product([A, B])` is `AB`: `B` acts first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OperatorExpr {
    Gen(Arc<Representation>, Letter),
    GenAdj(Arc<Representation>, Letter),
    BasisU(Arc<BasisUnitary>),
    BasisUAdj(Arc<BasisUnitary>),
    Scalar(Scalar),
    Sum(Vec<OperatorExpr>),
    Product(Vec<OperatorExpr>),
    /// `X₁ ⊕ X₂` from the `domain` splitting to the `codomain` splitting.
    DirectSum { left: Box<OperatorExpr>, right: Box<OperatorExpr>, domain: Split, codomain: Split },
}

impl OperatorExpr {
    pub fn scalar(z: Scalar) -> Self {
        OperatorExpr::Scalar(z)
    }

    pub fn one() -> Self {
        OperatorExpr::Scalar(Scalar::one())
    }

    pub fn zero() -> Self {
        OperatorExpr::Scalar(Scalar::zero())
    }

    pub fn gen(rep: &Arc<Representation>, i: Letter) -> Self {
        OperatorExpr::Gen(rep.clone(), i)
    }

    pub fn gen_adj(rep: &Arc<Representation>, i: Letter) -> Self {
        OperatorExpr::GenAdj(rep.clone(), i)
    }

    pub fn basis_u(w: &Arc<BasisUnitary>) -> Self {
        if w.is_identity() {
            Self::one()
        } else {
            OperatorExpr::BasisU(w.clone())
        }
    }

    pub fn basis_u_adj(w: &Arc<BasisUnitary>) -> Self {
        if w.is_identity() {
            Self::one()
        } else {
            OperatorExpr::BasisUAdj(w.clone())
        }
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            OperatorExpr::Scalar(z) => Some(z),
            _ => None,
        }
    }

    /// A product with scalars pulled to the front, identity unitaries
    /// dropped and adjacent `W W*` pairs cancelled.
    pub fn product(factors: Vec<OperatorExpr>) -> Self {
        let mut coef = Scalar::one();
        let mut rest: Vec<OperatorExpr> = Vec::new();
        let mut queue = factors;
        queue.reverse();
        while let Some(f) = queue.pop() {
            match f {
                OperatorExpr::Product(inner) => queue.extend(inner.into_iter().rev()),
                OperatorExpr::Scalar(z) => coef *= &z,
                OperatorExpr::BasisU(w) | OperatorExpr::BasisUAdj(w) if w.is_identity() => {}
                f => {
                    if rest.last().is_some_and(|last| cancels(last, &f)) {
                        rest.pop();
                    } else {
                        rest.push(f);
                    }
                }
            }
        }
        if coef.is_zero() {
            return Self::zero();
        }
        if !coef.is_one() || rest.is_empty() {
            rest.insert(0, OperatorExpr::Scalar(coef));
        }
        if rest.len() == 1 {
            rest.pop().expect("one factor")
        } else {
            OperatorExpr::Product(rest)
        }
    }

    /// A sum with nested sums flattened, scalar terms combined and zeros dropped.
    pub fn sum(terms: Vec<OperatorExpr>) -> Self {
        let mut coef = Scalar::zero();
        let mut rest = Vec::new();
        let mut queue = terms;
        while let Some(t) = queue.pop() {
            match t {
                OperatorExpr::Sum(inner) => queue.extend(inner),
                OperatorExpr::Scalar(z) => coef += &z,
                t => rest.push(t),
            }
        }
        rest.reverse();
        if !coef.is_zero() {
            rest.insert(0, OperatorExpr::Scalar(coef));
        }
        match rest.len() {
            0 => Self::zero(),
            1 => rest.pop().expect("one term"),
            _ => OperatorExpr::Sum(rest),
        }
    }

    pub fn direct_sum(left: OperatorExpr, right: OperatorExpr, domain: Split, codomain: Split) -> Self {
        OperatorExpr::DirectSum { left: Box::new(left), right: Box::new(right), domain, codomain }
    }

    /// The syntactic adjoint.
    pub fn adjoint(&self) -> Self {
        match self {
            OperatorExpr::Gen(r, i) => OperatorExpr::GenAdj(r.clone(), *i),
            OperatorExpr::GenAdj(r, i) => OperatorExpr::Gen(r.clone(), *i),
            OperatorExpr::BasisU(w) => OperatorExpr::BasisUAdj(w.clone()),
            OperatorExpr::BasisUAdj(w) => OperatorExpr::BasisU(w.clone()),
            OperatorExpr::Scalar(z) => OperatorExpr::Scalar(z.conj()),
            OperatorExpr::Sum(terms) => OperatorExpr::Sum(terms.iter().map(Self::adjoint).collect()),
            OperatorExpr::Product(factors) => OperatorExpr::Product(factors.iter().rev().map(Self::adjoint).collect()),
            OperatorExpr::DirectSum { left, right, domain, codomain } => OperatorExpr::DirectSum {
                left: Box::new(left.adjoint()),
                right: Box::new(right.adjoint()),
                domain: codomain.clone(),
                codomain: domain.clone(),
            },
        }
    }

    pub fn apply(&self, v: &RankVector) -> Result<RankVector> {
        if v.is_zero() {
            return Ok(RankVector::zero());
        }
        match self {
            OperatorExpr::Gen(r, i) => r.apply_ranked(*i, false, v),
            OperatorExpr::GenAdj(r, i) => r.apply_ranked(*i, true, v),
            OperatorExpr::BasisU(w) => w.apply(v),
            OperatorExpr::BasisUAdj(w) => w.apply_adjoint(v),
            OperatorExpr::Scalar(z) => Ok(v.scale(z)),
            OperatorExpr::Sum(terms) => {
                let mut out = RankVector::zero();
                for t in terms {
                    out.add_assign(&t.apply(v)?);
                }
                Ok(out)
            }
            OperatorExpr::Product(factors) => {
                let mut cur = v.clone();
                for f in factors.iter().rev() {
                    cur = f.apply(&cur)?;
                    if cur.is_zero() {
                        break;
                    }
                }
                Ok(cur)
            }
            OperatorExpr::DirectSum { left, right, domain, codomain } => {
                let (a, b) = domain.split(v)?;
                codomain.join(&left.apply(&a)?, &right.apply(&b)?)
            }
        }
    }

    /// Every representation referenced by a generator atom.
    pub fn representations(&self) -> Vec<Arc<Representation>> {
        let mut out = Vec::new();
        self.collect_reps(&mut out);
        out
    }

    fn collect_reps(&self, out: &mut Vec<Arc<Representation>>) {
        match self {
            OperatorExpr::Gen(r, _) | OperatorExpr::GenAdj(r, _) => {
                if !out.iter().any(|x| x == r) {
                    out.push(r.clone());
                }
            }
            OperatorExpr::Sum(xs) | OperatorExpr::Product(xs) => xs.iter().for_each(|x| x.collect_reps(out)),
            OperatorExpr::DirectSum { left, right, .. } => {
                left.collect_reps(out);
                right.collect_reps(out);
            }
            _ => {}
        }
    }
}

fn cancels(a: &OperatorExpr, b: &OperatorExpr) -> bool {
    match (a, b) {
        (OperatorExpr::BasisU(x), OperatorExpr::BasisUAdj(y)) | (OperatorExpr::BasisUAdj(x), OperatorExpr::BasisU(y)) => x == y,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::rep::Layout;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    #[test]
    fn product_simplification() {
        let rep = Arc::new(Representation::fock(2));
        let w = Arc::new(BasisUnitary::phases(BTreeMap::from([(0, Scalar::i())])).unwrap());
        let p = OperatorExpr::product(vec![
            OperatorExpr::basis_u(&w),
            OperatorExpr::scalar(Scalar::from_int(2)),
            OperatorExpr::basis_u_adj(&w),
            OperatorExpr::gen(&rep, 1),
        ]);
        assert_eq!(p, OperatorExpr::Product(vec![OperatorExpr::scalar(Scalar::from_int(2)), OperatorExpr::gen(&rep, 1)]));
        let s = OperatorExpr::product(vec![OperatorExpr::basis_u(&w), OperatorExpr::scalar(Scalar::i()), OperatorExpr::basis_u_adj(&w)]);
        assert_eq!(s, OperatorExpr::scalar(Scalar::i()));
        assert_eq!(OperatorExpr::product(vec![OperatorExpr::zero(), OperatorExpr::gen(&rep, 1)]), OperatorExpr::zero());
        assert_eq!(OperatorExpr::sum(vec![OperatorExpr::one(), OperatorExpr::scalar(Scalar::i())]), OperatorExpr::scalar(Scalar::complex(1, 1, 1, 1)));
    }

    #[test]
    fn adjoint_is_the_hilbert_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            for _ in 0..10 {
                let a = Arc::new(random::representation(&mut rng, n));
                let b = Arc::new(random::representation(&mut rng, n));
                let x = OperatorExpr::sum(vec![
                    OperatorExpr::product(vec![OperatorExpr::gen_adj(&a, 1), OperatorExpr::scalar(random::scalar(&mut rng)), OperatorExpr::gen(&b, n as Letter)]),
                    OperatorExpr::product(vec![OperatorExpr::gen(&a, 1), OperatorExpr::gen(&b, 1)]),
                ]);
                if a.layout().dimension() != b.layout().dimension() {
                    continue;
                }
                let xi = random::rank_vector(&mut rng, &a, 3, 2);
                let eta = random::rank_vector(&mut rng, &a, 3, 2);
                assert_eq!(x.apply(&xi).unwrap().inner(&eta), xi.inner(&x.adjoint().apply(&eta).unwrap()));
            }
        }
    }

    #[test]
    fn direct_sum_acts_blockwise() {
        let f = Arc::new(Representation::fock(2));
        let c = Arc::new(Representation::cycle(2, [1]).unwrap());
        let split = Split::new(Layout::new(2, f.blocks().to_vec()).unwrap(), c.layout().clone()).unwrap();
        let sum = Representation::from_layout(split.sum_layout());
        let x = OperatorExpr::direct_sum(OperatorExpr::gen(&f, 1), OperatorExpr::gen(&c, 1), split.clone(), split);
        for r in 0..20 {
            let e = RankVector::basis(r);
            assert_eq!(x.apply(&e).unwrap(), sum.apply_ranked(1, false, &e).unwrap());
        }
    }
}
