//! Satake parameters, their characteristic polynomials, integrality and reduction mod `ℓ`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::padic::{
    canonical_compare, poly_eval, FieldConfig, LocalNumber, LocalNumberRecord, PadicError, Residue,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatakeError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("invalid Satake parameter: {0}")]
    Invalid(String),
    #[error("characteristic polynomial is not integral")]
    NotIntegral,
    #[error("parameters live in different field configurations")]
    ConfigMismatch,
    #[error("residue multisets differ; no matching exists")]
    NoMatching,
}

/// A representative `(μ_1, …, μ_n)` of a Satake parameter at a place with residue field of size `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParam {
    q: u64,
    mu: Vec<LocalNumber>,
}

impl SatakeParam {
    pub fn new(q: u64, mu: Vec<LocalNumber>) -> Result<Self, SatakeError> {
        let first = mu.first().ok_or_else(|| SatakeError::Invalid("rank must be at least 1".into()))?;
        let field = first.field().clone();
        if mu.iter().any(|m| m.field() != &field) {
            return Err(SatakeError::ConfigMismatch);
        }
        if mu.iter().any(|m| m.is_zero()) {
            return Err(SatakeError::Invalid("Satake parameters must be nonzero".into()));
        }
        if !is_prime_power(q) {
            return Err(SatakeError::Invalid(format!("q = {q} is not a prime power")));
        }
        if q.is_multiple_of(field.ell()) {
            return Err(SatakeError::Invalid(format!("q = {q} is divisible by ell = {}", field.ell())));
        }
        Ok(SatakeParam { q, mu })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn mu(&self) -> &[LocalNumber] {
        &self.mu
    }

    pub fn field(&self) -> &FieldConfig {
        self.mu[0].field()
    }

    /// Same parameters with entries reordered: entry `j` of the result is `mu[perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        SatakeParam { q: self.q, mu: perm.iter().map(|&i| self.mu[i].clone()).collect() }
    }

    /// `e_0, …, e_n` of the parameters.
    pub fn elementary_symmetric_all(&self) -> Result<Vec<LocalNumber>, SatakeError> {
        let field = self.field();
        let n = self.n();
        let mut e = vec![LocalNumber::zero(field); n + 1];
        e[0] = LocalNumber::one(field);
        for (i, m) in self.mu.iter().enumerate() {
            for j in (1..=i + 1).rev() {
                e[j] = e[j].add(&m.mul(&e[j - 1])?)?;
            }
        }
        Ok(e)
    }

    /// `h_0, …, h_k` via `h_k = Σ_{i≥1} (−1)^{i−1} e_i h_{k−i}`; no divisions.
    pub fn complete_homogeneous_upto(&self, k: usize) -> Result<Vec<LocalNumber>, SatakeError> {
        let field = self.field();
        let e = self.elementary_symmetric_all()?;
        let n = self.n();
        let mut h = Vec::with_capacity(k + 1);
        h.push(LocalNumber::one(field));
        for j in 1..=k {
            let mut terms = Vec::with_capacity(n.min(j));
            for i in 1..=n.min(j) {
                let t = e[i].mul(&h[j - i])?;
                terms.push(if i % 2 == 1 { t } else { t.neg() });
            }
            h.push(LocalNumber::sum(field, &terms)?);
        }
        Ok(h)
    }
}

/// `e_r(μ)` for `1 ≤ r ≤ n` (and `e_0 = 1`).
pub fn elementary_symmetric(s: &SatakeParam, r: usize) -> Result<LocalNumber, SatakeError> {
    if r > s.n() {
        return Ok(LocalNumber::zero(s.field()));
    }
    Ok(s.elementary_symmetric_all()?.swap_remove(r))
}

/// `h_k(μ)`, the complete homogeneous symmetric polynomial.
pub fn complete_homogeneous(s: &SatakeParam, k: usize) -> Result<LocalNumber, SatakeError> {
    Ok(s.complete_homogeneous_upto(k)?.swap_remove(k))
}

/// The monic polynomial `X^n + c_1 X^{n−1} + ⋯ + c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    field: FieldConfig,
    coeffs: Vec<LocalNumber>,
}

impl CharPoly {
    pub fn new(field: &FieldConfig, coeffs: Vec<LocalNumber>) -> Result<Self, SatakeError> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(SatakeError::ConfigMismatch);
        }
        Ok(CharPoly { field: field.clone(), coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_1, …, c_n`.
    pub fn coeffs(&self) -> &[LocalNumber] {
        &self.coeffs
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    /// Coefficients constant term first, including the leading 1.
    pub fn ascending(&self) -> Vec<LocalNumber> {
        let mut v: Vec<LocalNumber> = self.coeffs.iter().rev().cloned().collect();
        v.push(LocalNumber::one(&self.field));
        v
    }

    pub fn eval(&self, x: &LocalNumber) -> Result<LocalNumber, PadicError> {
        poly_eval(&self.ascending(), x)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "X^{n}")?;
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - r - 1;
            match power {
                0 => write!(f, " + ({c})")?,
                1 => write!(f, " + ({c})X")?,
                _ => write!(f, " + ({c})X^{power}")?,
            }
        }
        Ok(())
    }
}

/// A monic polynomial over the residue field, stored as reduced `c_1, …, c_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedPoly {
    pub coeffs: Vec<Residue>,
}

impl fmt::Display for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.coeffs.len();
        write!(f, "X^{n}")?;
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - r - 1;
            let coef = if c.is_one() { String::new() } else { format!("({c})") };
            match power {
                0 => write!(f, " + {}", if c.is_one() { "1".to_string() } else { format!("({c})") })?,
                1 => write!(f, " + {coef}X")?,
                _ => write!(f, " + {coef}X^{power}")?,
            }
        }
        Ok(())
    }
}

/// `c_r = (−1)^r e_r`.
pub fn char_poly(s: &SatakeParam) -> Result<CharPoly, SatakeError> {
    let e = s.elementary_symmetric_all()?;
    let coeffs = e
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(r, er)| if r % 2 == 1 { er.neg() } else { er })
        .collect();
    CharPoly::new(s.field(), coeffs)
}

pub fn is_integral(p: &CharPoly) -> bool {
    p.coeffs.iter().all(|c| c.is_integral())
}

pub fn reduce_char_poly(p: &CharPoly) -> Result<ReducedPoly, SatakeError> {
    let coeffs = p
        .coeffs
        .iter()
        .map(|c| c.reduce().map_err(|_| SatakeError::NotIntegral))
        .collect::<Result<_, _>>()?;
    Ok(ReducedPoly { coeffs })
}

/// Same reduction in `F_{ℓ^d}[X]`.
pub fn congruent(p1: &CharPoly, p2: &CharPoly) -> Result<bool, SatakeError> {
    if p1.field != p2.field {
        return Err(SatakeError::ConfigMismatch);
    }
    let r1 = reduce_char_poly(p1)?;
    let r2 = reduce_char_poly(p2)?;
    Ok(r1 == r2)
}

/// Permutation `σ` with `reduce(μ_{1,j}) = reduce(μ_{2,σ(j)})`, found by sorting both
/// residue multisets canonically (ties broken by original index).
pub fn match_residues(s1: &SatakeParam, s2: &SatakeParam) -> Result<Vec<usize>, SatakeError> {
    if s1.field() != s2.field() {
        return Err(SatakeError::ConfigMismatch);
    }
    if s1.n() != s2.n() {
        return Err(SatakeError::NoMatching);
    }
    let residues = |s: &SatakeParam| -> Result<Vec<(Residue, usize)>, SatakeError> {
        let mut v = s
            .mu
            .iter()
            .enumerate()
            .map(|(i, m)| m.reduce().map(|r| (r, i)).map_err(|_| SatakeError::NotIntegral))
            .collect::<Result<Vec<_>, _>>()?;
        v.sort_by(|a, b| canonical_compare(&a.0, &b.0).then(a.1.cmp(&b.1)));
        Ok(v)
    };
    let r1 = residues(s1)?;
    let r2 = residues(s2)?;
    let mut sigma = vec![0; s1.n()];
    for ((a, i), (b, j)) in r1.iter().zip(&r2) {
        if a != b {
            return Err(SatakeError::NoMatching);
        }
        sigma[*i] = *j;
    }
    Ok(sigma)
}

pub(crate) fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}

/// JSON form `{n, q, mu}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub q: u64,
    pub mu: Vec<LocalNumberRecord>,
}

impl SatakeRecord {
    pub fn to_param(&self, field: &FieldConfig) -> Result<SatakeParam, SatakeError> {
        if let Some(n) = self.n {
            if n != self.mu.len() {
                return Err(SatakeError::Invalid(format!("n = {n} but {} parameters given", self.mu.len())));
            }
        }
        let mu = self.mu.iter().map(|m| m.to_number(field)).collect::<Result<_, _>>()?;
        SatakeParam::new(self.q, mu)
    }

    pub fn from_param(s: &SatakeParam) -> Self {
        SatakeRecord {
            n: Some(s.n()),
            q: s.q(),
            mu: s.mu().iter().map(LocalNumberRecord::from_number).collect(),
        }
    }
}

/// JSON form `{coeffs}` of a characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyRecord {
    pub coeffs: Vec<LocalNumberRecord>,
}

impl CharPolyRecord {
    pub fn from_poly(p: &CharPoly) -> Self {
        CharPolyRecord { coeffs: p.coeffs().iter().map(LocalNumberRecord::from_number).collect() }
    }

    pub fn to_poly(&self, field: &FieldConfig) -> Result<CharPoly, SatakeError> {
        let coeffs = self.coeffs.iter().map(|c| c.to_number(field)).collect::<Result<_, _>>()?;
        CharPoly::new(field, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Valuation;

    fn field(ell: u64) -> FieldConfig {
        FieldConfig::new(ell, 1, 16).unwrap()
    }

    fn param(f: &FieldConfig, q: u64, mu: &[i64]) -> SatakeParam {
        SatakeParam::new(q, mu.iter().map(|&m| LocalNumber::from_integer(f, m)).collect()).unwrap()
    }

    fn int(f: &FieldConfig, k: i64) -> LocalNumber {
        LocalNumber::from_integer(f, k)
    }

    #[test]
    fn elementary_symmetric_examples() {
        let f = field(7);
        let s = param(&f, 3, &[3, 2]);
        assert_eq!(elementary_symmetric(&s, 1).unwrap(), int(&f, 5));
        assert_eq!(elementary_symmetric(&s, 2).unwrap(), int(&f, 6));
        let t = param(&f, 3, &[1, 1, 1]);
        assert_eq!(elementary_symmetric(&t, 2).unwrap(), int(&f, 3));
        assert_eq!(elementary_symmetric(&t, 3).unwrap(), int(&f, 1));
    }

    #[test]
    fn char_poly_examples() {
        let f = field(7);
        let p = char_poly(&param(&f, 3, &[3, 2])).unwrap();
        assert_eq!(p.coeffs(), &[int(&f, -5), int(&f, 6)]);
        let p = char_poly(&param(&f, 3, &[1, 1])).unwrap();
        assert_eq!(p.coeffs(), &[int(&f, -2), int(&f, 1)]);
        let ell = LocalNumber::uniformizer(&f);
        let s = SatakeParam::new(3, vec![ell.clone(), ell.inv().unwrap()]).unwrap();
        let p = char_poly(&s).unwrap();
        let expected = ell.add(&ell.inv().unwrap()).unwrap().neg();
        assert_eq!(p.coeffs()[0], expected);
        assert_eq!(p.coeffs()[1], int(&f, 1));
        assert_eq!(p.coeffs()[0].valuation(), Valuation::Finite(-1));
        assert!(!is_integral(&p));
    }

    #[test]
    fn integrality_examples() {
        let f = field(7);
        assert!(is_integral(&char_poly(&param(&f, 3, &[3, 2])).unwrap()));
        assert!(is_integral(&char_poly(&param(&f, 3, &[1, 1, 1, 1])).unwrap()));
    }

    #[test]
    fn reduction_examples() {
        let f5 = field(5);
        let r = reduce_char_poly(&char_poly(&param(&f5, 3, &[3, 2])).unwrap()).unwrap();
        assert_eq!(r.coeffs, vec![f5.residue_from_int(0), f5.residue_from_int(1)]);
        assert_eq!(r.to_string(), "X^2 + 1");
        let f3 = field(3);
        let r = reduce_char_poly(&char_poly(&param(&f3, 2, &[1, 1])).unwrap()).unwrap();
        assert_eq!(r.coeffs, vec![f3.residue_from_int(1), f3.residue_from_int(1)]);
        let ell = LocalNumber::uniformizer(&f3);
        let s = SatakeParam::new(2, vec![ell.clone(), ell.inv().unwrap()]).unwrap();
        assert_eq!(reduce_char_poly(&char_poly(&s).unwrap()), Err(SatakeError::NotIntegral));
    }

    #[test]
    fn congruence_examples() {
        let f = field(5);
        let p1 = char_poly(&param(&f, 3, &[1, 1])).unwrap();
        let p2 = char_poly(&param(&f, 3, &[1, 6])).unwrap();
        let p3 = char_poly(&param(&f, 3, &[1, 2])).unwrap();
        assert!(congruent(&p1, &p2).unwrap());
        assert!(congruent(&p1, &p1).unwrap());
        assert!(!congruent(&p1, &p3).unwrap());
        let other = char_poly(&param(&field(7), 3, &[1, 1])).unwrap();
        assert_eq!(congruent(&p1, &other), Err(SatakeError::ConfigMismatch));
    }

    #[test]
    fn matching_examples() {
        let f = field(5);
        let s1 = param(&f, 3, &[1, 2]);
        assert_eq!(match_residues(&s1, &s1).unwrap(), vec![0, 1]);
        let s2 = param(&f, 3, &[2 + 5, 1 + 25]);
        assert_eq!(match_residues(&s1, &s2).unwrap(), vec![1, 0]);
        let a = param(&f, 3, &[1, 1]);
        assert_eq!(match_residues(&a, &s1), Err(SatakeError::NoMatching));
    }

    #[test]
    fn complete_homogeneous_examples() {
        let f = field(7);
        let s = param(&f, 3, &[1, 1]);
        assert_eq!(complete_homogeneous(&s, 0).unwrap(), int(&f, 1));
        assert_eq!(complete_homogeneous(&s, 2).unwrap(), int(&f, 3));
        let t = param(&f, 3, &[3, 2]);
        assert_eq!(complete_homogeneous(&t, 1).unwrap(), elementary_symmetric(&t, 1).unwrap());
    }

    #[test]
    fn rejects_invalid_parameters() {
        let f = field(5);
        assert!(SatakeParam::new(5, vec![int(&f, 1)]).is_err());
        assert!(SatakeParam::new(6, vec![int(&f, 1)]).is_err());
        assert!(SatakeParam::new(3, vec![LocalNumber::zero(&f)]).is_err());
        assert!(SatakeParam::new(3, vec![]).is_err());
        assert!(SatakeParam::new(4, vec![int(&f, 2)]).is_ok());
    }
}
