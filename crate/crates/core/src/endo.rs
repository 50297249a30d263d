//! The endomorphisms `α(a) = Σ_i T_i a T_i*` of `B(H)` induced by a
//! generator family, compared for equality and conjugacy.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{evaluate, gamma_u, AlgebraElement};
use crate::equivalence::verify::{self, check_spaces, Counterexample, VerificationReport};
use crate::equivalence::{
    scalar_free_check, structural_witness, verify_quasifree, Flavor, FreeWitness, OperatorExpr, QuasifreeWitness,
    ScalarFreeOutcome,
};
use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::module_kit::{fd_to_k0, ibn, FDAlgebra};
use crate::rep::{BasisUnitary, RankVector, Representation};
use crate::scalar::Scalar;
use crate::wold::multiplicity;
use crate::word::Letter;

/// `Σ c |ket⟩⟨bra|` in rank coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseOperator {
    terms: BTreeMap<(u64, u64), Scalar>,
}

impl SparseOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rank_one(ket: u64, bra: u64, coef: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(ket, bra, &coef);
        out
    }

    /// `|x⟩⟨y|`.
    pub fn outer(x: &RankVector, y: &RankVector) -> Self {
        let mut out = Self::zero();
        for (&p, a) in x {
            for (&q, b) in y {
                out.add_term(p, q, &(a * &b.conj()));
            }
        }
        out
    }

    /// The projection onto the first `bound` ranks.
    pub fn truncated_identity(bound: u64) -> Self {
        let mut out = Self::zero();
        for r in 0..bound {
            out.add_term(r, r, &Scalar::one());
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, u64, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (k, b, c) in terms {
            out.add_term(k, b, &c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(u64, u64), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, ket: u64, bra: u64, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        let sum = match self.terms.get(&(ket, bra)) {
            Some(c) => c + coef,
            None => coef.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&(ket, bra));
        } else {
            self.terms.insert((ket, bra), sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(k, b), c) in &other.terms {
            out.add_term(k, b, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, z: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(k, b), c)| (k, b, c * z)))
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut by_ket: BTreeMap<u64, Vec<(u64, &Scalar)>> = BTreeMap::new();
        for (&(k, b), c) in &other.terms {
            by_ket.entry(k).or_default().push((b, c));
        }
        let mut out = Self::zero();
        for (&(k, b), c) in &self.terms {
            if let Some(row) = by_ket.get(&b) {
                for (bb, d) in row {
                    out.add_term(k, *bb, &(c * d));
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(k, b), c)| (b, k, c.conj())))
    }

    pub fn apply(&self, v: &RankVector) -> RankVector {
        let mut out = RankVector::zero();
        for (&(k, b), c) in &self.terms {
            if let Some(x) = v.get(&b) {
                out.add_term(k, &(c * x));
            }
        }
        out
    }

    /// `W a W*`.
    pub fn conjugate_by(&self, w: &BasisUnitary) -> Result<Self> {
        let mut out = Self::zero();
        for (&(k, b), c) in &self.terms {
            let (kk, z) = w.map_rank(k)?;
            let (bb, y) = w.map_rank(b)?;
            out.add_term(kk, bb, &(&(c * &z) * &y.conj()));
        }
        Ok(out)
    }
}

impl std::fmt::Debug for SparseOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&(k, b), c)| format!("({c})|{k}⟩⟨{b}|")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `α(a) = Σ_i T_i a T_i*` for the family `T_i` of `rep`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endomorphism {
    pub rep: Arc<Representation>,
}

impl Endomorphism {
    pub fn new(rep: Representation) -> Self {
        Endomorphism { rep: Arc::new(rep) }
    }

    /// `α(1) = 1` exactly when the family has no defect.
    pub fn is_unital(&self) -> bool {
        multiplicity(&self.rep) == 0
    }

    pub fn apply(&self, a: &SparseOperator) -> Result<SparseOperator> {
        endo_apply(self, a)
    }
}

pub fn endo_apply(alpha: &Endomorphism, a: &SparseOperator) -> Result<SparseOperator> {
    let rep = &alpha.rep;
    let mut images: BTreeMap<u64, Vec<RankVector>> = BTreeMap::new();
    for &(k, b) in a.terms.keys() {
        for r in [k, b] {
            if let Entry::Vacant(slot) = images.entry(r) {
                let e = RankVector::basis(r);
                slot.insert((1..=rep.n() as Letter).map(|i| rep.apply_ranked(i, false, &e)).collect::<Result<_>>()?);
            }
        }
    }
    let mut out = SparseOperator::zero();
    for (&(k, b), c) in &a.terms {
        for (x, y) in images[&k].iter().zip(&images[&b]) {
            out = out.add(&SparseOperator::outer(x, y).scale(c));
        }
    }
    Ok(out)
}

/// Rank pairs `(ket, bra)` below `bound`, ordered by `(max, ket, bra)`.
pub fn rank_one_order(bound: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..bound).flat_map(|m| (0..=m).flat_map(move |k| if k == m { (0..=m).map(|b| (m, b)).collect::<Vec<_>>() } else { vec![(k, m)] }))
}

/// An operator on which two endomorphisms differ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Discrepancy {
    pub a: SparseOperator,
    pub alpha_a: SparseOperator,
    pub beta_a: SparseOperator,
}

/// The first rank-one `|k⟩⟨b|` with both ranks of depth at most `depth` on
/// which `α` and `β` differ.
pub fn find_discrepancy(alpha: &Endomorphism, beta: &Endomorphism, depth: usize) -> Result<Option<Discrepancy>> {
    let bound = alpha.rep.layout().rank_bound(depth)?.max(beta.rep.layout().rank_bound(depth)?);
    for (k, b) in rank_one_order(bound) {
        let a = SparseOperator::rank_one(k, b, Scalar::one());
        let (x, y) = (endo_apply(alpha, &a)?, endo_apply(beta, &a)?);
        if x != y {
            return Ok(Some(Discrepancy { a, alpha_a: x, beta_a: y }));
        }
    }
    Ok(None)
}

/// Equality of induced endomorphisms needs the relative commutant of
/// `B(H)`, which is `ℂ`, to have invariant basis number.
fn commutant_has_ibn() -> bool {
    ibn(&fd_to_k0(&FDAlgebra::complex()))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EndoEqual {
    /// `ω = σ_τ ∘ U` exactly for the scalar witness, hence `α = β`.
    Equal { witness: FreeWitness, report: VerificationReport },
    /// The scalar witness passes every check to the reported depth.
    DepthCertified { witness: FreeWitness, report: VerificationReport },
    NotEqual { reason: String, discrepancy: Option<Discrepancy>, report: Option<VerificationReport> },
}

/// How far past the requested depth the discrepancy search may go.
const EXTRA_SEARCH_DEPTH: usize = 2;

pub fn decide_endo_equal(omega: &Representation, tau: &Representation, depth: usize) -> Result<EndoEqual> {
    assert!(commutant_has_ibn(), "ℂ has invariant basis number");
    let (alpha, beta) = (Endomorphism::new(omega.clone()), Endomorphism::new(tau.clone()));
    let search = |report: Option<VerificationReport>, reason: String| -> Result<EndoEqual> {
        let mut discrepancy = None;
        if omega.layout().dimension() == tau.layout().dimension() {
            for d in depth..=depth + EXTRA_SEARCH_DEPTH {
                discrepancy = find_discrepancy(&alpha, &beta, d)?;
                if discrepancy.is_some() {
                    break;
                }
            }
        }
        Ok(EndoEqual::NotEqual { reason, discrepancy, report })
    };
    if omega.n() != tau.n() {
        return search(None, format!("different numbers of generators: {} vs {}", omega.n(), tau.n()));
    }
    if omega.layout().dimension() != tau.layout().dimension() {
        return Ok(EndoEqual::NotEqual { reason: "different Hilbert space dimensions".into(), discrepancy: None, report: None });
    }
    match scalar_free_check(omega, tau, depth)? {
        ScalarFreeOutcome::ScalarVerified { witness, report } => Ok(EndoEqual::Equal { witness, report }),
        ScalarFreeOutcome::Inconclusive { witness, report } => Ok(EndoEqual::DepthCertified { witness, report }),
        ScalarFreeOutcome::Refuted { report } => search(Some(report), "no scalar free witness".into()),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EndoConjugate {
    /// The witness holds on the whole space.
    Conjugate { witness: QuasifreeWitness, report: VerificationReport },
    NotConjugate { reason: String },
    /// A supplied witness that passes every check to the reported depth.
    DepthCertified { witness: QuasifreeWitness, report: VerificationReport },
    Unknown { reason: String, report: Option<VerificationReport> },
}

pub fn decide_endo_conjugate(
    omega: &Representation,
    tau: &Representation,
    witness: Option<&QuasifreeWitness>,
    depth: usize,
) -> Result<EndoConjugate> {
    assert!(commutant_has_ibn(), "ℂ has invariant basis number");
    if omega.n() != tau.n() {
        return Ok(EndoConjugate::NotConjugate { reason: format!("different numbers of generators: {} vs {}", omega.n(), tau.n()) });
    }
    let (a, b) = (multiplicity(omega), multiplicity(tau));
    if a != b {
        return Ok(EndoConjugate::NotConjugate { reason: format!("multiplicities differ: {a} vs {b}") });
    }
    if let Some(q) = witness {
        if q.u.flavor() != Flavor::Scalar {
            return Ok(EndoConjugate::Unknown { reason: "supplied witness is not scalar".into(), report: None });
        }
        let report = verify_quasifree(omega, tau, q, depth)?;
        return Ok(if report.passed() {
            EndoConjugate::DepthCertified { witness: q.clone(), report }
        } else {
            EndoConjugate::Unknown { reason: "supplied witness fails verification".into(), report: Some(report) }
        });
    }
    if let Some(q) = structural_witness(omega, tau)? {
        let report = verify_quasifree(omega, tau, &q, depth)?;
        debug_assert!(report.passed());
        return Ok(EndoConjugate::Conjugate { witness: q, report });
    }
    Ok(EndoConjugate::Unknown { reason: "blocks are not a rearrangement of each other".into(), report: None })
}

pub const INTERTWINER: &str = "Xa = α(a)X";

/// Checks `X a e_b = α(a) X e_b` for all rank-one `a = |k⟩⟨b'|` and basis
/// vectors `e_b` with ranks of depth at most `depth`.
pub fn intertwiner_check(x: &OperatorExpr, alpha: &Endomorphism, depth: usize) -> Result<VerificationReport> {
    let rep = &alpha.rep;
    let bound = rep.layout().rank_bound(depth)?;
    let x_imgs: Vec<RankVector> = (0..bound).map(|b| x.apply(&RankVector::basis(b))).collect::<Result<_>>()?;
    let t_imgs: Vec<Vec<RankVector>> = (0..bound)
        .map(|r| (1..=rep.n() as Letter).map(|i| rep.apply_ranked(i, false, &RankVector::basis(r))).collect())
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new(depth, &[INTERTWINER]);
    for (k, bra) in rank_one_order(bound) {
        for b in 0..bound {
            report.tick(0);
            let lhs = if bra == b { x_imgs[k as usize].clone() } else { RankVector::zero() };
            let mut rhs = RankVector::zero();
            for (tk, tb) in t_imgs[k as usize].iter().zip(&t_imgs[bra as usize]) {
                rhs.add_scaled(tk, &tb.inner(&x_imgs[b as usize]));
            }
            if lhs != rhs {
                let cx = Counterexample {
                    check: INTERTWINER.into(),
                    index: vec![k as usize, bra as usize],
                    rank: b,
                    name: rep.name_at(b).ok(),
                    lhs,
                    rhs,
                };
                report.fail(0, cx);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Checks `ω = Ad_W ∘ τ ∘ γ_U` on basis vectors, evaluating `τ(γ_U(v_i))`
/// through the symbolic algebra. Reports the same checks, in the same order,
/// as verifying the quasifree witness `(W, U)`.
pub fn laca_gamma_check(
    omega: &Representation,
    tau: &Representation,
    w: &BasisUnitary,
    u: &ScalarMatrix,
    depth: usize,
) -> Result<VerificationReport> {
    let n = omega.n();
    if u.dim() != n {
        return Err(Error::RankMismatch(u.dim(), n));
    }
    u.require_unitary()?;
    check_spaces(omega, tau, w)?;
    let images: Vec<AlgebraElement> =
        (1..=n as Letter).map(|i| gamma_u(&AlgebraElement::generator(n, i)?, u)).collect::<Result<_>>()?;
    let mut report = VerificationReport::new(depth, &[verify::IDENTITY, verify::UNITARY_LEFT, verify::UNITARY_RIGHT]);
    let u_adj = u.adjoint();
    for rank in 0..verify::tested_ranks(omega, tau, depth)? {
        let e = RankVector::basis(rank);
        let cx = |check: &str, index: Vec<usize>, lhs: RankVector, rhs: RankVector| Counterexample {
            check: check.to_string(),
            index,
            rank,
            name: omega.name_at(rank).ok(),
            lhs,
            rhs,
        };
        report.tick(0);
        let pulled = tau.to_names(&w.apply_adjoint(&e)?)?;
        for (i, g) in images.iter().enumerate() {
            let lhs = omega.apply_ranked(i as Letter + 1, false, &e)?;
            let rhs = w.apply(&tau.to_ranks(&evaluate(g, tau, &pulled)?)?)?;
            if lhs != rhs {
                report.fail(0, cx(verify::IDENTITY, vec![i + 1], lhs, rhs));
                return Ok(report);
            }
        }
        for (check, product, slot) in [(verify::UNITARY_LEFT, u_adj.mul(u)?, 1), (verify::UNITARY_RIGHT, u.mul(&u_adj)?, 2)] {
            report.tick(slot);
            for j in 0..n {
                for k in 0..n {
                    let lhs = e.scale(product.get(j, k));
                    let rhs = if j == k { e.clone() } else { RankVector::zero() };
                    if lhs != rhs {
                        report.fail(slot, cx(check, vec![j + 1, k + 1], lhs, rhs));
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::rep::BlockKind;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn swap() -> ScalarMatrix {
        ScalarMatrix::permutation(&[1, 0])
    }

    fn random_operator(rng: &mut ChaCha8Rng, bound: u64, terms: usize) -> SparseOperator {
        use rand::Rng;
        SparseOperator::from_terms((0..terms).map(|_| (rng.gen_range(0..bound), rng.gen_range(0..bound), random::scalar(rng))))
    }

    #[test]
    fn endo_apply_examples() {
        let fock = Endomorphism::new(Representation::fock(2));
        let a = SparseOperator::rank_one(0, 0, Scalar::one());
        assert_eq!(fock.apply(&a).unwrap(), SparseOperator::from_terms([(1, 1, Scalar::one()), (2, 2, Scalar::one())]));
        assert!(fock.apply(&SparseOperator::zero()).unwrap().is_zero());
        let cyc = Representation::cycle(2, [1]).unwrap();
        let e0 = RankVector::basis(0);
        let imgs: Vec<_> = (1..=2).map(|i| cyc.apply_ranked(i, false, &e0).unwrap()).collect();
        let want = SparseOperator::outer(&imgs[0], &imgs[0]).add(&SparseOperator::outer(&imgs[1], &imgs[1]));
        assert_eq!(Endomorphism::new(cyc).apply(&a).unwrap(), want);
    }

    #[test]
    fn rank_one_order_is_by_max_then_ket() {
        let got: Vec<_> = rank_one_order(3).collect();
        assert_eq!(got, vec![(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (1, 2), (2, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn endo_equal_examples() {
        let fock = Representation::fock(2);
        let twisted = Representation::fock(2).with_twist(swap()).unwrap();
        let EndoEqual::Equal { witness, .. } = decide_endo_equal(&twisted, &fock, 3).unwrap() else { panic!() };
        assert_eq!(witness.scalar_matrix(), Some(swap()));
        let (a, b) = (Endomorphism::new(twisted), Endomorphism::new(fock.clone()));
        assert!(find_discrepancy(&a, &b, 3).unwrap().is_none());
        let EndoEqual::NotEqual { discrepancy: Some(d), .. } = decide_endo_equal(&fock, &Representation::fock_multiple(2, 2), 3).unwrap()
        else {
            panic!()
        };
        assert_eq!(d.a, SparseOperator::rank_one(0, 0, Scalar::one()));
        assert_ne!(d.alpha_a, d.beta_a);
        let EndoEqual::Equal { witness, .. } = decide_endo_equal(&fock, &fock, 3).unwrap() else { panic!() };
        assert_eq!(witness, FreeWitness::identity(2));
        assert!(matches!(decide_endo_equal(&fock, &Representation::fock(3), 2).unwrap(), EndoEqual::NotEqual { .. }));
    }

    #[test]
    fn endo_conjugate_examples() {
        let two = Representation::fock_multiple(2, 2);
        let two_twisted = Representation::fock_multiple(2, 2).with_twist(swap()).unwrap();
        let EndoConjugate::Conjugate { witness, report } = decide_endo_conjugate(&two, &two_twisted, None, 4).unwrap() else { panic!() };
        assert!(report.passed());
        assert_eq!(witness.u.flavor(), Flavor::Scalar);
        let not = decide_endo_conjugate(&Representation::fock(2), &two, None, 3).unwrap();
        assert!(matches!(not, EndoConjugate::NotConjugate { .. }));
        let (c1, c2) = (Representation::cycle(2, [1]).unwrap(), Representation::cycle(2, [2]).unwrap());
        assert!(matches!(decide_endo_conjugate(&c1, &c2, None, 3).unwrap(), EndoConjugate::Unknown { .. }));
        let bounded = QuasifreeWitness::free(crate::equivalence::essential_free_witness(&c1, &c2).unwrap());
        assert!(matches!(decide_endo_conjugate(&c1, &c2, Some(&bounded), 3).unwrap(), EndoConjugate::Unknown { .. }));
        let scalar = QuasifreeWitness::free(FreeWitness::from_matrix(&swap()).unwrap());
        let got = decide_endo_conjugate(&c1, &c2, Some(&scalar), 3).unwrap();
        assert!(matches!(got, EndoConjugate::Unknown { report: Some(_), .. }));
    }

    #[test]
    fn conjugate_witness_conjugates_the_endomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 1..=3 {
            for _ in 0..6 {
                let blocks = random::blocks(&mut rng, n, 1, 1);
                let mut shuffled = blocks.clone();
                shuffled.reverse();
                let o = random::decorate(&mut rng, Representation::new(n, blocks).unwrap());
                let t = random::decorate(&mut rng, Representation::new(n, shuffled).unwrap());
                let EndoConjugate::Conjugate { witness, .. } = decide_endo_conjugate(&o, &t, None, 2).unwrap() else { panic!() };
                let (alpha, beta) = (Endomorphism::new(o.clone()), Endomorphism::new(t.clone()));
                for (k, b) in rank_one_order(o.layout().rank_bound(2).unwrap()) {
                    let a = SparseOperator::rank_one(k, b, Scalar::one());
                    let w = &witness.w;
                    let rhs = beta.apply(&a.conjugate_by(&w.adjoint().unwrap()).unwrap()).unwrap().conjugate_by(w).unwrap();
                    assert_eq!(alpha.apply(&a).unwrap(), rhs);
                }
            }
        }
    }

    #[test]
    fn unital_exactly_when_defect_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for n in 1..=3 {
            for _ in 0..8 {
                let rep = random::representation(&mut rng, n);
                let alpha = Endomorphism::new(rep.clone());
                let d = 2;
                let image = alpha.apply(&SparseOperator::truncated_identity(rep.layout().rank_bound(d + 1).unwrap())).unwrap();
                let defect = crate::wold::defect_basis(&rep, d).unwrap();
                for r in 0..rep.layout().rank_bound(d).unwrap() {
                    let e = RankVector::basis(r);
                    let fixed = image.apply(&e) == e;
                    assert_eq!(fixed, !defect.contains(&rep.name_at(r).unwrap()));
                }
                assert_eq!(alpha.is_unital(), defect.is_empty());
            }
        }
    }

    #[test]
    fn intertwiner_examples() {
        let rep = Arc::new(Representation::new(2, vec![BlockKind::Fock, BlockKind::cycle([1, 2])]).unwrap());
        let alpha = Endomorphism { rep: rep.clone() };
        for i in 1..=2 {
            assert!(intertwiner_check(&OperatorExpr::gen(&rep, i), &alpha, 2).unwrap().passed());
        }
        let report = intertwiner_check(&OperatorExpr::one(), &alpha, 2).unwrap();
        assert_eq!(report.counterexample.unwrap().rank, 0);
        let combo = OperatorExpr::sum(vec![
            OperatorExpr::product(vec![OperatorExpr::gen(&rep, 1), OperatorExpr::scalar(Scalar::ratio(3, 5))]),
            OperatorExpr::product(vec![OperatorExpr::gen(&rep, 2), OperatorExpr::scalar(Scalar::complex(0, 1, 4, 5))]),
        ]);
        assert!(intertwiner_check(&combo, &alpha, 2).unwrap().passed());
    }

    #[test]
    fn laca_examples() {
        let fock = Representation::fock(2);
        let twisted = Representation::fock(2).with_twist(swap()).unwrap();
        let id = BasisUnitary::identity();
        assert!(laca_gamma_check(&twisted, &fock, &id, &swap(), 4).unwrap().passed());
        assert!(laca_gamma_check(&fock, &fock, &id, &ScalarMatrix::identity(2), 4).unwrap().passed());
        let bad = ScalarMatrix::diagonal(&[Scalar::one(), Scalar::from_int(2)]);
        assert_eq!(laca_gamma_check(&fock, &fock, &id, &bad, 1), Err(Error::NotUnitary));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn endo_apply_is_a_star_homomorphism(seed in any::<u64>(), n in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rep = random::representation(&mut rng, n);
            let bound = rep.layout().rank_bound(2).unwrap();
            let a = random_operator(&mut rng, bound, 4);
            let b = random_operator(&mut rng, bound, 4);
            let alpha = Endomorphism::new(rep);
            prop_assert_eq!(alpha.apply(&a.mul(&b)).unwrap(), alpha.apply(&a).unwrap().mul(&alpha.apply(&b).unwrap()));
            prop_assert_eq!(alpha.apply(&a.adjoint()).unwrap(), alpha.apply(&a).unwrap().adjoint());
        }

        #[test]
        fn laca_agrees_with_quasifree_verification(seed in any::<u64>(), n in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tau = random::representation(&mut rng, n);
            let u = random::unitary(&mut rng, n);
            let omega = if rand::Rng::gen_bool(&mut rng, 0.5) { tau.clone().with_twist(tau.twist_or_identity().mul(&u).unwrap()).unwrap() } else { random::decorate(&mut rng, tau.untwisted()) };
            let w = BasisUnitary::phases(random::conj_phases(&mut rng, &tau)).unwrap();
            let via_gamma = laca_gamma_check(&omega, &tau, &w, &u, 2).unwrap();
            let q = QuasifreeWitness::new(w, FreeWitness::from_matrix(&u).unwrap());
            prop_assert_eq!(via_gamma, verify_quasifree(&omega, &tau, &q, 2).unwrap());
        }
    }
}
