//! Exact verification of witnesses on every basis vector up to a depth.

use crate::equivalence::witness::{FreeWitness, QuasifreeWitness};
use crate::error::{Error, Result};
use crate::rep::{BasisName, BasisUnitary, Layout, RankVector, Representation};
use crate::word::Letter;

pub const IDENTITY: &str = "identity";
pub const UNITARY_LEFT: &str = "U*U = I";
pub const UNITARY_RIGHT: &str = "UU* = I";

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    /// Basis vectors on which the check was evaluated.
    pub basis_count: u64,
    pub pass: bool,
}

/// An exact failure: `lhs ≠ rhs` on `e_rank`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub check: String,
    /// The generator `i` for the identity check, `(j, k)` for unitarity.
    pub index: Vec<usize>,
    pub rank: u64,
    /// The name of `rank` in the space of `ω`.
    pub name: Option<BasisName>,
    pub lhs: RankVector,
    pub rhs: RankVector,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub verified_depth: usize,
    pub checks: Vec<Check>,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.checks.iter().all(|c| c.pass)
    }

    pub(crate) fn new(depth: usize, names: &[&str]) -> Self {
        VerificationReport {
            verified_depth: depth,
            checks: names.iter().map(|n| Check { name: n.to_string(), basis_count: 0, pass: true }).collect(),
            counterexample: None,
        }
    }

    pub(crate) fn tick(&mut self, check: usize) {
        self.checks[check].basis_count += 1;
    }

    pub(crate) fn fail(&mut self, check: usize, cx: Counterexample) {
        self.checks[check].pass = false;
        self.counterexample = Some(cx);
    }
}

/// Endpoint layouts of `w`, when they are recorded in it.
fn endpoints(w: &BasisUnitary) -> (Option<Layout>, Option<Layout>) {
    match w {
        BasisUnitary::Relabel(r) => match r.piece_map() {
            Some(m) => (Some(m.source.clone()), Some(m.target.clone())),
            None => (None, None),
        },
        BasisUnitary::Sum { domain, codomain, .. } => (Some(domain.sum_layout()), Some(codomain.sum_layout())),
        BasisUnitary::Compose(fs) => {
            let target = fs.iter().map(endpoints).find_map(|(_, t)| t);
            let source = fs.iter().rev().map(endpoints).find_map(|(s, _)| s);
            (source, target)
        }
    }
}

/// Checks that `w` can map `H_τ` onto `H_ω`.
pub fn check_spaces(omega: &Representation, tau: &Representation, w: &BasisUnitary) -> Result<()> {
    if omega.n() != tau.n() {
        return Err(Error::RankMismatch(omega.n(), tau.n()));
    }
    let (source, target) = endpoints(w);
    if let Some(s) = source {
        if s != *tau.layout() {
            return Err(Error::InvalidBasisMap("witness domain is not the space of tau".into()));
        }
    }
    if let Some(t) = target {
        if t != *omega.layout() {
            return Err(Error::InvalidBasisMap("witness codomain is not the space of omega".into()));
        }
    }
    let (a, b) = (omega.layout().dimension(), tau.layout().dimension());
    if a != b {
        let show = |d: Option<u64>| d.map_or("infinite".to_string(), |d| d.to_string());
        return Err(Error::DimensionMismatch(show(a), show(b)));
    }
    Ok(())
}

/// The ranks tested at `depth`: every rank of depth at most `depth` in
/// either space.
pub fn tested_ranks(omega: &Representation, tau: &Representation, depth: usize) -> Result<u64> {
    Ok(omega.layout().rank_bound(depth)?.max(tau.layout().rank_bound(depth)?))
}

pub fn verify_free(omega: &Representation, tau: &Representation, u: &FreeWitness, depth: usize) -> Result<VerificationReport> {
    verify_quasifree(omega, tau, &QuasifreeWitness::free(u.clone()), depth)
}

/// Checks `ω(v_i) e = Σ_j W τ(v_j) W* u_{ji} e` and both unitarity relations
/// on every tested basis vector, in rank order, stopping at the first failure.
pub fn verify_quasifree(omega: &Representation, tau: &Representation, q: &QuasifreeWitness, depth: usize) -> Result<VerificationReport> {
    check_spaces(omega, tau, &q.w)?;
    let n = omega.n();
    if q.u.n() != n {
        return Err(Error::RankMismatch(q.u.n(), n));
    }
    let u_adj = q.u.adjoint();
    let mut report = VerificationReport::new(depth, &[IDENTITY, UNITARY_LEFT, UNITARY_RIGHT]);
    for rank in 0..tested_ranks(omega, tau, depth)? {
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
        let columns: Vec<Vec<RankVector>> =
            (0..n).map(|j| (0..n).map(|i| q.u.entry(j, i).apply(&e)).collect::<Result<_>>()).collect::<Result<_>>()?;
        for i in 0..n {
            let lhs = omega.apply_ranked(i as Letter + 1, false, &e)?;
            let mut rhs = RankVector::zero();
            for (j, col) in columns.iter().enumerate() {
                let x = q.w.apply_adjoint(&col[i])?;
                let y = tau.apply_ranked(j as Letter + 1, false, &x)?;
                rhs.add_assign(&q.w.apply(&y)?);
            }
            if lhs != rhs {
                report.fail(0, cx(IDENTITY, vec![i + 1], lhs, rhs));
                return Ok(report);
            }
        }
        report.tick(1);
        for j in 0..n {
            for k in 0..n {
                // (U*U)_{jk} = Σ_i u_{ij}* u_{ik}
                let mut lhs = RankVector::zero();
                for i in 0..n {
                    lhs.add_assign(&u_adj.entry(j, i).apply(&columns[i][k])?);
                }
                let rhs = if j == k { e.clone() } else { RankVector::zero() };
                if lhs != rhs {
                    report.fail(1, cx(UNITARY_LEFT, vec![j + 1, k + 1], lhs, rhs));
                    return Ok(report);
                }
            }
        }
        report.tick(2);
        for j in 0..n {
            for k in 0..n {
                // (UU*)_{jk} = Σ_i u_{ji} u_{ki}*
                let mut lhs = RankVector::zero();
                for i in 0..n {
                    lhs.add_assign(&q.u.entry(j, i).apply(&u_adj.entry(i, k).apply(&e)?)?);
                }
                let rhs = if j == k { e.clone() } else { RankVector::zero() };
                if lhs != rhs {
                    report.fail(2, cx(UNITARY_RIGHT, vec![j + 1, k + 1], lhs, rhs));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
