use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::fp_poly;
use super::PadicError;

/// Default number of significant `ℓ`-adic digits.
pub const DEFAULT_PRECISION: u32 = 32;

/// Largest supported `ℓ`; residue arithmetic multiplies in `u128`.
const MAX_ELL: u64 = 1 << 31;

#[derive(Debug)]
struct Inner {
    ell: u64,
    degree: usize,
    modulus: Vec<u64>,
    precision: u32,
    modulus_big: Vec<BigInt>,
    ell_pows: Vec<BigInt>,
}

/// The unramified extension `Q_{ℓ^d} = Q_ℓ[X]/(M)` together with the working precision.
///
/// `M` is a monic integer polynomial with coefficients in `[0, ℓ)` whose reduction is
/// irreducible over `Z/ℓ`. Cloning is cheap; every value carries its config.
#[derive(Clone)]
pub struct FieldConfig(Arc<Inner>);

impl FieldConfig {
    /// Uses the lexicographically smallest monic irreducible of degree `d`.
    pub fn new(ell: u64, d: usize, precision: u32) -> Result<Self, PadicError> {
        check_basic(ell, d, precision)?;
        let modulus = smallest_irreducible(ell, d);
        Self::build(ell, modulus, precision)
    }

    /// `modulus` lists `d + 1` coefficients, constant term first, leading coefficient 1.
    pub fn with_modulus(ell: u64, modulus: Vec<u64>, precision: u32) -> Result<Self, PadicError> {
        if modulus.len() < 2 {
            return Err(PadicError::InvalidConfig("modulus must have degree at least 1".into()));
        }
        let d = modulus.len() - 1;
        check_basic(ell, d, precision)?;
        if modulus[d] != 1 {
            return Err(PadicError::InvalidConfig("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= ell) {
            return Err(PadicError::InvalidConfig("modulus coefficients must lie in [0, ell)".into()));
        }
        if !fp_poly::is_irreducible(&modulus, ell) {
            return Err(PadicError::InvalidConfig("modulus is reducible modulo ell".into()));
        }
        Self::build(ell, modulus, precision)
    }

    fn build(ell: u64, modulus: Vec<u64>, precision: u32) -> Result<Self, PadicError> {
        let degree = modulus.len() - 1;
        let modulus_big = modulus.iter().map(|&c| BigInt::from(c)).collect();
        let ell_big = BigInt::from(ell);
        let mut ell_pows = Vec::with_capacity(precision as usize + 2);
        let mut acc = BigInt::one();
        for _ in 0..=precision + 1 {
            ell_pows.push(acc.clone());
            acc *= &ell_big;
        }
        Ok(FieldConfig(Arc::new(Inner {
            ell,
            degree,
            modulus,
            precision,
            modulus_big,
            ell_pows,
        })))
    }

    pub fn ell(&self) -> u64 {
        self.0.ell
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn precision(&self) -> u32 {
        self.0.precision
    }

    pub(crate) fn modulus_big(&self) -> &[BigInt] {
        &self.0.modulus_big
    }

    /// `ℓ^k`; cached up to `N + 1`.
    pub(crate) fn ell_pow(&self, k: u32) -> BigInt {
        match self.0.ell_pows.get(k as usize) {
            Some(v) => v.clone(),
            None => num_traits::pow(BigInt::from(self.0.ell), k as usize),
        }
    }

    /// Size of the residue field, `ℓ^d`, when it fits.
    pub fn residue_field_size(&self) -> Option<u128> {
        (self.0.ell as u128).checked_pow(self.0.degree as u32)
    }

    pub fn same_as(&self, other: &FieldConfig) -> bool {
        self == other
    }

    pub(crate) fn ensure_same(&self, other: &FieldConfig) -> Result<(), PadicError> {
        if self == other {
            Ok(())
        } else {
            Err(PadicError::ConfigMismatch)
        }
    }

    // ---- residue field F_{ℓ^d} ----

    pub fn residue_zero(&self) -> Residue {
        Residue::from_coeffs(vec![0; self.degree()])
    }

    pub fn residue_one(&self) -> Residue {
        self.residue_from_int(1)
    }

    pub fn residue_from_int(&self, k: i64) -> Residue {
        let mut c = vec![0; self.degree()];
        c[0] = k.rem_euclid(self.ell() as i64) as u64;
        Residue::from_coeffs(c)
    }

    /// Builds a residue from arbitrary coefficients, reducing them.
    pub fn residue(&self, coeffs: &[u64]) -> Residue {
        let mut v: Vec<u64> = coeffs.iter().map(|&c| c % self.ell()).collect();
        v.resize(self.degree().max(v.len()), 0);
        let reduced = fp_poly::rem(&v, self.modulus(), self.ell());
        self.pad(reduced)
    }

    fn pad(&self, mut v: Vec<u64>) -> Residue {
        v.resize(self.degree(), 0);
        Residue::from_coeffs(v)
    }

    pub fn residue_add(&self, a: &Residue, b: &Residue) -> Residue {
        self.pad(fp_poly::add(&a.coeffs, &b.coeffs, self.ell()))
    }

    pub fn residue_sub(&self, a: &Residue, b: &Residue) -> Residue {
        self.pad(fp_poly::sub(&a.coeffs, &b.coeffs, self.ell()))
    }

    pub fn residue_neg(&self, a: &Residue) -> Residue {
        self.residue_sub(&self.residue_zero(), a)
    }

    pub fn residue_mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.pad(fp_poly::mul_rem(&a.coeffs, &b.coeffs, self.modulus(), self.ell()))
    }

    pub fn residue_pow(&self, a: &Residue, exp: u128) -> Residue {
        self.pad(fp_poly::pow_rem(&a.coeffs, exp, self.modulus(), self.ell()))
    }

    pub fn residue_inv(&self, a: &Residue) -> Option<Residue> {
        if a.is_zero() {
            return None;
        }
        let (g, s) = fp_poly::ext_gcd_left(&a.coeffs, self.modulus(), self.ell());
        debug_assert_eq!(g, vec![1]);
        Some(self.pad(fp_poly::rem(&s, self.modulus(), self.ell())))
    }

    /// Evaluates a polynomial with residue coefficients (constant first) at `x`.
    pub fn residue_eval(&self, poly: &[Residue], x: &Residue) -> Residue {
        poly.iter()
            .rev()
            .fold(self.residue_zero(), |acc, c| self.residue_add(&self.residue_mul(&acc, x), c))
    }

    /// All residues in canonical (lexicographic) order. Only sensible for small fields.
    pub fn residues(&self) -> impl Iterator<Item = Residue> + '_ {
        let ell = self.ell();
        let d = self.degree();
        let total = self.residue_field_size().unwrap_or(u128::MAX);
        (0..total).map(move |mut k| {
            let mut c = vec![0u64; d];
            for slot in c.iter_mut().rev() {
                *slot = (k % ell as u128) as u64;
                k /= ell as u128;
            }
            Residue::from_coeffs(c)
        })
    }
}

impl PartialEq for FieldConfig {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ell == other.0.ell
                && self.0.modulus == other.0.modulus
                && self.0.precision == other.0.precision)
    }
}

impl Eq for FieldConfig {}

impl fmt::Debug for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldConfig")
            .field("ell", &self.0.ell)
            .field("d", &self.0.degree)
            .field("modulus", &self.0.modulus)
            .field("precision", &self.0.precision)
            .finish()
    }
}

fn check_basic(ell: u64, d: usize, precision: u32) -> Result<(), PadicError> {
    if !fp_poly::is_prime(ell) {
        return Err(PadicError::InvalidConfig(format!("ell = {ell} is not prime")));
    }
    if ell >= MAX_ELL {
        return Err(PadicError::InvalidConfig(format!("ell = {ell} is too large")));
    }
    if d == 0 {
        return Err(PadicError::InvalidConfig("residue degree must be at least 1".into()));
    }
    if precision == 0 {
        return Err(PadicError::InvalidConfig("precision must be at least 1".into()));
    }
    Ok(())
}

/// Monic irreducible of degree `d`, smallest in lexicographic order of `(c_0, …, c_{d−1})`.
fn smallest_irreducible(ell: u64, d: usize) -> Vec<u64> {
    let mut c = vec![0u64; d];
    loop {
        let mut f = c.clone();
        f.push(1);
        if fp_poly::is_irreducible(&f, ell) {
            return f;
        }
        // increment with c_{d-1} as the least significant digit
        let mut i = d;
        loop {
            i -= 1;
            c[i] += 1;
            if c[i] < ell {
                break;
            }
            c[i] = 0;
            assert!(i > 0, "no irreducible polynomial found");
        }
    }
}

/// An element of the residue field `F_{ℓ^d}`: `d` coefficients in `[0, ℓ)`, constant first.
///
/// The derived order is the canonical lexicographic comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Residue {
    coeffs: Vec<u64>,
}

impl Residue {
    pub(crate) fn from_coeffs(coeffs: Vec<u64>) -> Self {
        Residue { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first() == Some(&1) && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{c}a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{c}a^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Total order on residues: lexicographic on coefficient vectors.
pub fn canonical_compare(a: &Residue, b: &Residue) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_modulus_is_smallest_irreducible() {
        assert_eq!(FieldConfig::new(2, 2, 8).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldConfig::new(3, 2, 8).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldConfig::new(7, 1, 8).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(FieldConfig::new(4, 1, 8).is_err());
        assert!(FieldConfig::new(5, 0, 8).is_err());
        assert!(FieldConfig::new(5, 1, 0).is_err());
        assert!(FieldConfig::with_modulus(5, vec![1, 0, 1], 8).is_err());
        assert!(FieldConfig::with_modulus(3, vec![1, 0, 1], 8).is_ok());
    }

    #[test]
    fn residue_field_inverse() {
        let cfg = FieldConfig::new(3, 2, 4).unwrap();
        for r in cfg.residues().skip(1) {
            let inv = cfg.residue_inv(&r).unwrap();
            assert!(cfg.residue_mul(&r, &inv).is_one());
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let cfg = FieldConfig::new(5, 1, 4).unwrap();
        let mut v = [cfg.residue_from_int(2), cfg.residue_from_int(0), cfg.residue_from_int(1)];
        v.sort_by(canonical_compare);
        let ints: Vec<u64> = v.iter().map(|r| r.coeffs()[0]).collect();
        assert_eq!(ints, vec![0, 1, 2]);
        assert_eq!(canonical_compare(&v[0], &v[1]), Ordering::Less);
        assert_eq!(canonical_compare(&v[1], &v[1]), Ordering::Equal);
    }
}
