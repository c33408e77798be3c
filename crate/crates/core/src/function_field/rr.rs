//! Riemann–Roch spaces on the projective line and the finite quotients `𝔸/(k + U)`.

use super::ground::GroundField;
use super::local::{Adele, LocalElement};
use super::place::{Divisor, Place};
use super::poly::Poly;
use super::rational::RationalFunction;
use super::FunctionFieldError;

/// Default cap on enumerated elements and cosets.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// `(G, H, deg D)` with `L(D) = {G·g/H : deg g ≤ deg D}`.
fn rr_frame(k: &GroundField, d: &Divisor) -> (Poly, Poly, i64) {
    let mut g = Poly::one();
    let mut h = Poly::one();
    for (v, n) in d.iter() {
        if let Place::Finite(p) = v {
            if n > 0 {
                h = h.mul(k, &p.pow(k, n as u64));
            } else {
                g = g.mul(k, &p.pow(k, (-n) as u64));
            }
        }
    }
    (g, h, d.degree())
}

/// Basis `{G·t^i/H : 0 ≤ i ≤ deg D}` of `L(D) = {f : div f ≥ −D} ∪ {0}`.
pub fn rr_space(k: &GroundField, d: &Divisor) -> Vec<RationalFunction> {
    let (g, h, deg) = rr_frame(k, d);
    (0..=deg)
        .map(|i| RationalFunction::new(k, g.shift(i as usize), h.clone()).expect("nonzero denominator"))
        .collect()
}

pub fn rr_dimension(d: &Divisor) -> u64 {
    (d.degree() + 1).max(0) as u64
}

/// Whether `div f ≥ −D`, checked place by place.
pub fn in_rr_space(k: &GroundField, f: &RationalFunction, d: &Divisor) -> Result<bool, FunctionFieldError> {
    if f.is_zero() {
        return Ok(true);
    }
    let div = f.divisor(k)?;
    let mut places: Vec<&Place> = div.support().chain(d.support()).collect();
    places.sort();
    places.dedup();
    Ok(places.into_iter().all(|v| div.get(v) >= -d.get(v)))
}

fn checked_count(q: u64, dim: u64, cap: u64) -> Result<u64, FunctionFieldError> {
    let too_large = || FunctionFieldError::TooLarge(format!("{q}^{dim} exceeds the cap {cap}"));
    let total = q.checked_pow(dim as u32).filter(|_| dim < 64).ok_or_else(too_large)?;
    if total - 1 > cap {
        return Err(too_large());
    }
    Ok(total)
}

/// Every nonzero element of `L(D)`, ordered by coefficient vector (first basis element least
/// significant). Fails with `TooLarge` beyond `cap` elements.
pub fn rr_elements(k: &GroundField, d: &Divisor, cap: u64) -> Result<Vec<RationalFunction>, FunctionFieldError> {
    let dim = rr_dimension(d);
    if dim == 0 {
        return Ok(Vec::new());
    }
    let q = k.q() as u64;
    let total = checked_count(q, dim, cap)?;
    let (g, h, _) = rr_frame(k, d);
    let mut out = Vec::with_capacity((total - 1) as usize);
    for idx in 1..total {
        let mut c = Vec::with_capacity(dim as usize);
        let mut r = idx;
        for _ in 0..dim {
            c.push((r % q) as u32);
            r /= q;
        }
        let num = g.mul(k, &Poly::from_coeffs(c));
        out.push(RationalFunction::new(k, num, h.clone()).expect("nonzero denominator"));
    }
    Ok(out)
}

/// The divisor `Σ m_v·v + (m_∞ − 2)·∞` whose Riemann–Roch space is `{γ : γU ⊆ ker ψ} ∪ {0}`
/// for `U = ∏ 𝔭_v^{m_v}`.
pub fn psi_kernel_divisor(u: &Divisor) -> Divisor {
    let mut d = u.clone();
    d.add_at(Place::Infinity, -2);
    d
}

/// `{γ ∈ k^× : γ·𝔭_v^{m_v} ⊆ ker ψ_v for all v}`.
pub fn psi_kernel_set(k: &GroundField, u: &Divisor, cap: u64) -> Result<Vec<RationalFunction>, FunctionFieldError> {
    rr_elements(k, &psi_kernel_divisor(u), cap)
}

fn check_nonnegative(u: &Divisor) -> Result<i64, FunctionFieldError> {
    if let Some((v, n)) = u.iter().find(|(_, n)| *n < 0) {
        return Err(FunctionFieldError::InvalidInput(format!("negative exponent {n} at {v}")));
    }
    Ok(u.degree())
}

/// `[𝔸 : k + U]` for `U = ∏ 𝔭_v^{m_v}` with all `m_v ≥ 0`: `q^{Σ m_v deg v − 1}`, or 1.
pub fn quotient_index(k: &GroundField, u: &Divisor) -> Result<u128, FunctionFieldError> {
    let s = check_nonnegative(u)?;
    if s == 0 {
        return Ok(1);
    }
    (k.q() as u128)
        .checked_pow((s - 1) as u32)
        .ok_or_else(|| FunctionFieldError::TooLarge(format!("q^{} overflows", s - 1)))
}

/// Representatives of `𝔸/(k + U)`.
///
/// Using `𝔸 = k + ∏ O_v`, the quotient is `∏_{m_v > 0} O_v/𝔭_v^{m_v}` modulo the constants;
/// each representative lists polynomial representatives in the local variables, and the
/// first listed place has constant term zero.
pub fn coset_reps(k: &GroundField, u: &Divisor, cap: u64) -> Result<Vec<Adele>, FunctionFieldError> {
    let index = quotient_index(k, u)?;
    if index > cap as u128 {
        return Err(FunctionFieldError::TooLarge(format!("index {index} exceeds the cap {cap}")));
    }
    let places: Vec<(Place, u32)> = u.iter().filter(|(_, n)| *n > 0).map(|(v, n)| (v.clone(), n as u32)).collect();
    if places.is_empty() {
        return Ok(vec![Adele::new()]);
    }
    let q = k.q() as u64;
    // digits per place: coefficients of t^0 … t^{m·deg − 1} in the local variable
    let widths: Vec<usize> = places.iter().map(|(v, m)| *m as usize * v.degree()).collect();
    let total_digits: usize = widths.iter().sum();
    let count = q.pow(total_digits as u32 - 1);
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        // the skipped digit is the constant term at the first place
        let mut digits = vec![0u32];
        let mut r = idx;
        for _ in 1..total_digits {
            digits.push((r % q) as u32);
            r /= q;
        }
        let mut adele = Adele::new();
        let mut pos = 0;
        for ((v, m), w) in places.iter().zip(&widths) {
            let a = Poly::from_coeffs(digits[pos..pos + w].to_vec());
            pos += w;
            if !a.is_zero() {
                adele.set(LocalElement::from_local_poly(k, v.clone(), 0, &a, *m));
            }
        }
        out.push(adele);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rr_examples() {
        let k = GroundField::new(2, 1).unwrap();
        assert_eq!(rr_space(&k, &Divisor::new()), vec![RationalFunction::one()]);
        let t = Place::Finite(Poly::t());
        let basis = rr_space(&k, &Divisor::single(t.clone(), 2));
        assert_eq!(basis.len(), 3);
        let inv_t = RationalFunction::new(&k, Poly::one(), Poly::t()).unwrap();
        assert_eq!(basis[0], inv_t.mul(&k, &inv_t));
        assert_eq!(basis[1], inv_t);
        assert_eq!(basis[2], RationalFunction::one());
        assert!(rr_space(&k, &Divisor::single(Place::Infinity, -1)).is_empty());
    }

    #[test]
    fn index_examples() {
        let k = GroundField::new(3, 1).unwrap();
        assert_eq!(quotient_index(&k, &Divisor::new()).unwrap(), 1);
        let u = Divisor::single(Place::Finite(Poly::t()), 2);
        assert_eq!(quotient_index(&k, &u).unwrap(), 3);
        assert_eq!(coset_reps(&k, &u, 100).unwrap().len(), 3);
        assert_eq!(coset_reps(&k, &Divisor::new(), 100).unwrap(), vec![Adele::new()]);
        let big = Divisor::single(Place::Finite(Poly::t()), 20);
        assert!(matches!(coset_reps(&k, &big, 1000), Err(FunctionFieldError::TooLarge(_))));
    }

    #[test]
    fn kernel_set_of_trivial_level() {
        // U = ∏ O_v: L(−2∞) is zero
        let k = GroundField::new(2, 1).unwrap();
        assert!(psi_kernel_set(&k, &Divisor::new(), 100).unwrap().is_empty());
        let u = Divisor::single(Place::Infinity, 2);
        assert_eq!(psi_kernel_set(&k, &u, 100).unwrap(), vec![RationalFunction::one()]);
    }
}
