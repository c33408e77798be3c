//! Unramified Whittaker values on the diagonal torus and the mod-`ℓ` congruence check.
//!
//! `W(ϖ^a)` is `s_a(μ) · q^{m/2}` with `m = Σ a_j (2j − n − 1)` for dominant `a` and zero
//! otherwise. The Schur value is computed by Jacobi–Trudi in the complete homogeneous
//! polynomials, so nothing is ever divided by `μ_j − μ_l`.

mod det;
mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::padic::{LocalNumber, PadicError, ValuationBound};
use crate::satake::{char_poly, congruent, is_integral, SatakeError, SatakeParam};

pub use oracle::{bialternant, schur_oracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhittakerError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("supplied square root does not square to q")]
    BadSquareRoot,
    #[error("characteristic polynomial is not integral")]
    NotIntegral,
    #[error("characteristic polynomials are not congruent")]
    NotCongruent,
    #[error("input too large for this routine: {0}")]
    TooLarge(String),
}

/// Exponent vector `a` of the torus element `ϖ^a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(a: Vec<i64>) -> Self {
        Weight(a)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `a + c·(1, …, 1)`.
    pub fn shifted(&self, c: i64) -> Self {
        Weight(self.0.iter().map(|x| x + c).collect())
    }

    /// `Σ a_j (2j − n − 1)`.
    pub fn half_exponent(&self) -> i64 {
        let n = self.0.len() as i64;
        self.0.iter().enumerate().map(|(j, a)| a * (2 * (j as i64 + 1) - n - 1)).sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub fn is_dominant(a: &Weight) -> bool {
    a.0.windows(2).all(|w| w[0] >= w[1])
}

/// `coef · q^{q_half_exp / 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WhittakerValue {
    pub coef: LocalNumber,
    pub q_half_exp: i64,
    #[serde(skip)]
    q: u64,
}

impl WhittakerValue {
    pub fn new(coef: LocalNumber, q_half_exp: i64, q: u64) -> Self {
        let q_half_exp = if coef.is_zero() { 0 } else { q_half_exp };
        WhittakerValue { coef, q_half_exp, q }
    }

    pub fn zero(s: &SatakeParam) -> Self {
        WhittakerValue { coef: LocalNumber::zero(s.field()), q_half_exp: 0, q: s.q() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }
}

impl fmt::Display for WhittakerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q_half_exp == 0 {
            write!(f, "{}", self.coef)
        } else {
            write!(f, "{} * {}^({}/2)", self.coef, self.q, self.q_half_exp)
        }
    }
}

/// Precomputed `h_k` and `e_n` for repeated Schur evaluations at one parameter.
pub struct SchurEvaluator<'a> {
    s: &'a SatakeParam,
    h: Vec<LocalNumber>,
    e_n: LocalNumber,
}

impl<'a> SchurEvaluator<'a> {
    /// Ready for all partitions with first part at most `max_part`.
    pub fn new(s: &'a SatakeParam, max_part: usize) -> Result<Self, WhittakerError> {
        let h = s.complete_homogeneous_upto(max_part + s.n())?;
        let e_n = s.elementary_symmetric_all()?.pop().expect("n >= 1");
        Ok(SchurEvaluator { s, h, e_n })
    }

    fn h(&mut self, k: i64) -> Result<LocalNumber, WhittakerError> {
        if k < 0 {
            return Ok(LocalNumber::zero(self.s.field()));
        }
        let k = k as usize;
        if k >= self.h.len() {
            self.h = self.s.complete_homogeneous_upto(k)?;
        }
        Ok(self.h[k].clone())
    }

    pub fn schur(&mut self, a: &Weight) -> Result<LocalNumber, WhittakerError> {
        let n = self.s.n();
        if a.len() != n {
            return Err(WhittakerError::LengthMismatch { got: a.len(), expected: n });
        }
        if !is_dominant(a) {
            return Err(WhittakerError::NotDominant(a.0.clone()));
        }
        let c = a.0[n - 1];
        let lambda: Vec<i64> = a.0.iter().map(|x| x - c).collect();
        // rows past the length of λ form a unitriangular block
        let len = lambda.iter().take_while(|&&x| x > 0).count();
        let mut m = Vec::with_capacity(len);
        for (i, &li) in lambda.iter().take(len).enumerate() {
            let mut row = Vec::with_capacity(len);
            for j in 0..len {
                row.push(self.h(li - i as i64 + j as i64)?);
            }
            m.push(row);
        }
        let field = self.s.field().clone();
        let d = det::determinant(&field, &m)?;
        if c == 0 {
            Ok(d)
        } else {
            Ok(d.mul(&self.e_n.pow(c)?)?)
        }
    }

    pub fn whittaker(&mut self, a: &Weight) -> Result<WhittakerValue, WhittakerError> {
        let n = self.s.n();
        if a.len() != n {
            return Err(WhittakerError::LengthMismatch { got: a.len(), expected: n });
        }
        if !is_dominant(a) {
            return Ok(WhittakerValue::zero(self.s));
        }
        let coef = self.schur(a)?;
        Ok(WhittakerValue::new(coef, a.half_exponent(), self.s.q()))
    }
}

/// Rational Schur value `s_a(μ) = e_n^{a_n} · det(h_{λ_i − i + j})`.
pub fn schur_value(s: &SatakeParam, a: &Weight) -> Result<LocalNumber, WhittakerError> {
    let max = a.0.first().copied().unwrap_or(0) - a.0.last().copied().unwrap_or(0);
    SchurEvaluator::new(s, max.max(0) as usize)?.schur(a)
}

pub fn whittaker_value(s: &SatakeParam, a: &Weight) -> Result<WhittakerValue, WhittakerError> {
    if a.len() != s.n() {
        return Err(WhittakerError::LengthMismatch { got: a.len(), expected: s.n() });
    }
    if !is_dominant(a) {
        return Ok(WhittakerValue::zero(s));
    }
    let max = a.0[0] - a.0[s.n() - 1];
    SchurEvaluator::new(s, max as usize)?.whittaker(a)
}

/// `coef · sqrt_q^m`, after checking that `sqrt_q² = q` to the available precision.
pub fn collapse(w: &WhittakerValue, sqrt_q: &LocalNumber) -> Result<LocalNumber, WhittakerError> {
    let field = sqrt_q.field();
    let q = LocalNumber::from_integer(field, w.q as i64);
    match sqrt_q.mul(sqrt_q)?.difference_valuation(&q)? {
        ValuationBound::Exactly(v) if v.finite().is_some() => return Err(WhittakerError::BadSquareRoot),
        _ => {}
    }
    if w.coef.is_zero() {
        return Ok(w.coef.clone());
    }
    let m = w.q_half_exp;
    let factor = if m % 2 == 0 { q.pow(m / 2)? } else { sqrt_q.pow(m)? };
    Ok(w.coef.mul(&factor)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub weight: Weight,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Dominant weights with `bound ≥ a_1 ≥ ⋯ ≥ a_n ≥ −bound`, lexicographically increasing.
pub fn dominant_weights(n: usize, bound: i64) -> Vec<Weight> {
    fn rec(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if cur.len() == n {
            out.push(Weight(cur.clone()));
            return;
        }
        for x in lo..=hi {
            cur.push(x);
            rec(n, lo, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, -bound, bound, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Compares unramified Whittaker values of two congruent parameters over all dominant
/// weights in the box of radius `bound`.
///
/// Weights with `a_n < 0` involve `e_n^{a_n}`, so when `bound > 0` both constant terms must
/// also be units; otherwise `NotIntegral`.
pub fn check_congruence(s1: &SatakeParam, s2: &SatakeParam, bound: u32) -> Result<CongruenceReport, WhittakerError> {
    if s1.field() != s2.field() {
        return Err(SatakeError::ConfigMismatch.into());
    }
    if s1.n() != s2.n() || s1.q() != s2.q() {
        return Err(SatakeError::Invalid("parameters differ in rank or q".into()).into());
    }
    let p1 = char_poly(s1)?;
    let p2 = char_poly(s2)?;
    if !is_integral(&p1) || !is_integral(&p2) {
        return Err(WhittakerError::NotIntegral);
    }
    let n = s1.n();
    if bound > 0 && !(p1.coeffs()[n - 1].is_unit() && p2.coeffs()[n - 1].is_unit()) {
        return Err(WhittakerError::NotIntegral);
    }
    if !congruent(&p1, &p2)? {
        return Err(WhittakerError::NotCongruent);
    }
    let b = bound as i64;
    let mut ev1 = SchurEvaluator::new(s1, 2 * bound as usize)?;
    let mut ev2 = SchurEvaluator::new(s2, 2 * bound as usize)?;
    let mut report = CongruenceReport { checked: 0, violations: Vec::new() };
    for a in dominant_weights(n, b) {
        let w1 = ev1.whittaker(&a)?;
        let w2 = ev2.whittaker(&a)?;
        report.checked += 1;
        let mut reasons = Vec::new();
        if !w1.coef.is_integral() {
            reasons.push(format!("first coefficient has valuation {:?}", w1.coef.valuation()));
        }
        if !w2.coef.is_integral() {
            reasons.push(format!("second coefficient has valuation {:?}", w2.coef.valuation()));
        }
        if !w1.is_zero() && !w2.is_zero() && w1.q_half_exp != w2.q_half_exp {
            reasons.push("q-exponents disagree".into());
        }
        if reasons.is_empty() {
            let r1 = w1.coef.reduce()?;
            let r2 = w2.coef.reduce()?;
            if r1 != r2 {
                reasons.push(format!("residues differ: {r1} vs {r2}"));
            }
        }
        if !reasons.is_empty() {
            report.violations.push(Violation { weight: a, reason: reasons.join("; ") });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::FieldConfig;

    fn param(f: &FieldConfig, q: u64, mu: &[i64]) -> SatakeParam {
        SatakeParam::new(q, mu.iter().map(|&m| LocalNumber::from_integer(f, m)).collect()).unwrap()
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(&Weight(vec![0, 0, 0])));
        assert!(!is_dominant(&Weight(vec![0, 1])));
        assert!(is_dominant(&Weight(vec![3, 3, -1])));
    }

    #[test]
    fn schur_examples() {
        let f = FieldConfig::new(5, 1, 16).unwrap();
        let s = param(&f, 3, &[1, 1]);
        assert_eq!(schur_value(&s, &Weight::zero(2)).unwrap(), LocalNumber::one(&f));
        assert_eq!(schur_value(&s, &Weight(vec![2, 0])).unwrap(), LocalNumber::from_integer(&f, 3));
        let s = param(&f, 3, &[3, 2]);
        assert_eq!(schur_value(&s, &Weight(vec![1, 0])).unwrap(), LocalNumber::from_integer(&f, 5));
        assert_eq!(schur_value(&s, &Weight(vec![1, 1])).unwrap(), LocalNumber::from_integer(&f, 6));
        assert_eq!(
            schur_value(&s, &Weight(vec![0, -1])).unwrap(),
            LocalNumber::from_rational(&f, 5, 6).unwrap()
        );
    }

    #[test]
    fn whittaker_examples() {
        let f = FieldConfig::new(5, 1, 16).unwrap();
        let s = param(&f, 3, &[1, 1]);
        let w = whittaker_value(&s, &Weight(vec![2, 0])).unwrap();
        assert_eq!(w.coef, LocalNumber::from_integer(&f, 3));
        assert_eq!(w.q_half_exp, -2);
        let z = whittaker_value(&s, &Weight(vec![0, 1])).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.q_half_exp, 0);
        let one = whittaker_value(&s, &Weight::zero(2)).unwrap();
        assert_eq!((one.coef, one.q_half_exp), (LocalNumber::one(&f), 0));
    }

    #[test]
    fn collapse_examples() {
        let f = FieldConfig::new(5, 1, 16).unwrap();
        let s = param(&f, 4, &[1, 1]);
        let w = WhittakerValue::new(LocalNumber::one(&f), 2, s.q());
        let two = LocalNumber::from_integer(&f, 2);
        assert_eq!(collapse(&w, &two).unwrap(), LocalNumber::from_integer(&f, 4));
        assert_eq!(collapse(&w, &two.neg()).unwrap(), LocalNumber::from_integer(&f, 4));
        assert_eq!(collapse(&w, &LocalNumber::from_integer(&f, 3)), Err(WhittakerError::BadSquareRoot));
    }

    #[test]
    fn congruence_examples() {
        let f = FieldConfig::new(5, 1, 16).unwrap();
        let s1 = param(&f, 3, &[1, 2]);
        let s2 = param(&f, 3, &[6, 27]);
        let r = check_congruence(&s1, &s2, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, dominant_weights(2, 4).len());
        assert!(check_congruence(&s1, &s1, 2).unwrap().passed());
        let s3 = param(&f, 3, &[1, 3]);
        assert_eq!(check_congruence(&s1, &s3, 2), Err(WhittakerError::NotCongruent));
    }

    #[test]
    fn weights_enumerated_in_order() {
        let w = dominant_weights(2, 1);
        let expected: Vec<Weight> =
            [[-1, -1], [0, -1], [0, 0], [1, -1], [1, 0], [1, 1]].iter().map(|a| Weight(a.to_vec())).collect();
        assert_eq!(w, expected);
    }
}
