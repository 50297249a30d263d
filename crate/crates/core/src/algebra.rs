//! Normal-form arithmetic in the span of the monomials `v_α v_β*`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::rep::{NameVector, Representation};
use crate::scalar::Scalar;
use crate::word::{strip_prefix, word_concat, Letter, Word};

/// `Σ c_{α,β} v_α v_β*` over a fixed alphabet size `n`. The pair `(ε, ε)` is
/// the unit. Zero coefficients are never stored, so equality of elements is
/// equality of term maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Word::empty(), Word::empty(), Scalar::one()).expect("empty words are valid")
    }

    pub fn monomial(n: usize, alpha: Word, beta: Word, coef: Scalar) -> Result<Self> {
        alpha.validate(n)?;
        beta.validate(n)?;
        let mut out = Self::zero(n);
        out.add_term(alpha, beta, &coef);
        Ok(out)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, Word, Scalar)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (alpha, beta, coef) in terms {
            alpha.validate(n)?;
            beta.validate(n)?;
            out.add_term(alpha, beta, &coef);
        }
        Ok(out)
    }

    /// `v_i`.
    pub fn generator(n: usize, i: Letter) -> Result<Self> {
        Self::monomial(n, Word::letter(i), Word::empty(), Scalar::one())
    }

    /// `v_i*`.
    pub fn generator_adjoint(n: usize, i: Letter) -> Result<Self> {
        Self::monomial(n, Word::empty(), Word::letter(i), Scalar::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &Word, beta: &Word) -> Scalar {
        self.terms.get(&(alpha.clone(), beta.clone())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, alpha: Word, beta: Word, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        let key = (alpha, beta);
        let sum = match self.terms.get(&key) {
            Some(c) => c + coef,
            None => coef.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, z: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), &(c * z));
        }
        out
    }

    /// Product in normal form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        nf_mul(self, other)
    }

    pub fn adjoint(&self) -> Self {
        nf_adjoint(self)
    }
}

/// `(v_α v_β*)(v_γ v_δ*)` reduced with `v_i* v_j = δ_ij I`.
fn monomial_product(alpha: &Word, beta: &Word, gamma: &Word, delta: &Word) -> Option<(Word, Word)> {
    if let Some(rest) = strip_prefix(beta, gamma) {
        Some((word_concat(alpha, &rest), delta.clone()))
    } else {
        strip_prefix(gamma, beta).map(|rest| (alpha.clone(), word_concat(delta, &rest)))
    }
}

pub fn nf_mul(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.same_n(b)?;
    let mut out = AlgebraElement::zero(a.n);
    for ((alpha, beta), c) in &a.terms {
        for ((gamma, delta), d) in &b.terms {
            if let Some((x, y)) = monomial_product(alpha, beta, gamma, delta) {
                out.add_term(x, y, &(c * d));
            }
        }
    }
    Ok(out)
}

pub fn nf_adjoint(a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.n);
    for ((alpha, beta), c) in &a.terms {
        out.add_term(beta.clone(), alpha.clone(), &c.conj());
    }
    out
}

/// `p_n = I − Σ v_i v_i*`.
pub fn defect_element(n: usize) -> AlgebraElement {
    let mut out = AlgebraElement::one(n);
    for i in 1..=n as Letter {
        out.add_term(Word::letter(i), Word::letter(i), &-Scalar::one());
    }
    out
}

/// `γ_U(v_α)` expanded: `Σ_γ (Π_k u_{γ_k α_k}) v_γ`.
fn substitute_word(alpha: &Word, u: &ScalarMatrix) -> BTreeMap<Word, Scalar> {
    let mut acc = BTreeMap::from([(Word::empty(), Scalar::one())]);
    for &letter in alpha.letters() {
        let mut next = BTreeMap::new();
        for (w, c) in &acc {
            for j in 0..u.dim() {
                let z = u.get(j, letter as usize - 1);
                if z.is_zero() {
                    continue;
                }
                let mut letters = w.letters().to_vec();
                letters.push(j as Letter + 1);
                next.insert(Word::new(letters), c * z);
            }
        }
        acc = next;
    }
    acc
}

/// The quasifree automorphism `γ_U`: `v_i ↦ Σ_j v_j u_{ji}`, extended
/// multiplicatively and through the adjoint.
pub fn gamma_u(a: &AlgebraElement, u: &ScalarMatrix) -> Result<AlgebraElement> {
    if u.dim() != a.n {
        return Err(Error::RankMismatch(u.dim(), a.n));
    }
    u.require_unitary()?;
    let mut out = AlgebraElement::zero(a.n);
    for ((alpha, beta), c) in &a.terms {
        let left = substitute_word(alpha, u);
        let right = substitute_word(beta, u);
        for (g, x) in &left {
            for (d, y) in &right {
                out.add_term(g.clone(), d.clone(), &(&(c * x) * &y.conj()));
            }
        }
    }
    Ok(out)
}

/// `π(a) ξ` where `π` is the representation determined by `rep`.
pub fn evaluate(a: &AlgebraElement, rep: &Representation, xi: &NameVector) -> Result<NameVector> {
    if a.n != rep.n() {
        return Err(Error::RankMismatch(a.n, rep.n()));
    }
    let mut out = NameVector::zero();
    for ((alpha, beta), c) in &a.terms {
        let mut v = xi.clone();
        for &b in beta.letters() {
            if v.is_zero() {
                break;
            }
            v = rep.apply_generator_adjoint(b, &v)?;
        }
        for &l in alpha.letters().iter().rev() {
            if v.is_zero() {
                break;
            }
            v = rep.apply_generator(l, &v)?;
        }
        out.add_scaled(&v, c);
    }
    Ok(out)
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((alpha, beta), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})v{alpha:?}v{beta:?}*")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    alpha: Word,
    beta: Word,
    coef: Scalar,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|((alpha, beta), coef)| TermRepr { alpha: alpha.clone(), beta: beta.clone(), coef: coef.clone() })
            .collect();
        ElementRepr { n: self.n, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementRepr::deserialize(deserializer)?;
        if raw.n == 0 {
            return Err(serde::de::Error::custom("n must be at least 1"));
        }
        AlgebraElement::from_terms(raw.n, raw.terms.into_iter().map(|t| (t.alpha, t.beta, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}
