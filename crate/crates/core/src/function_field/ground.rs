use std::fmt;
use std::sync::Arc;

use crate::padic::fp_poly;

use super::FunctionFieldError;

/// Largest supported `q`; field operations are table driven.
pub const MAX_FIELD_SIZE: u64 = 1024;

/// The constant field `F_q = F_p[X]/(modulus)`.
///
/// Elements are `u32` indices `Σ c_i p^i` where `c_i` is the coefficient of `X^i`.
#[derive(Clone)]
pub struct GroundField(Arc<Inner>);

struct Inner {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u64>,
    add: Vec<u16>,
    neg: Vec<u16>,
    exp: Vec<u16>,
    log: Vec<u32>,
    trace: Vec<u16>,
}

impl GroundField {
    /// `F_{p^f}` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, f: u32) -> Result<Self, FunctionFieldError> {
        Self::check_size(p, f)?;
        let f_usize = f as usize;
        let mut coeffs = vec![0u64; f_usize];
        loop {
            let mut m = coeffs.clone();
            m.push(1);
            if fp_poly::is_irreducible(&m, p) {
                return Self::with_modulus(p, m);
            }
            // next candidate, constant term varying fastest
            let mut i = 0;
            loop {
                if i == f_usize {
                    return Err(FunctionFieldError::InvalidField("no irreducible modulus found".into()));
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    fn check_size(p: u64, f: u32) -> Result<(), FunctionFieldError> {
        if !fp_poly::is_prime(p) {
            return Err(FunctionFieldError::InvalidField(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(FunctionFieldError::InvalidField("f must be at least 1".into()));
        }
        match p.checked_pow(f) {
            Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
            _ => Err(FunctionFieldError::InvalidField(format!("{p}^{f} exceeds {MAX_FIELD_SIZE}"))),
        }
    }

    /// `F_p[X]/(modulus)` for a monic irreducible `modulus` given constant term first.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FunctionFieldError> {
        if modulus.len() < 2 {
            return Err(FunctionFieldError::InvalidField("modulus must have degree at least 1".into()));
        }
        let f = (modulus.len() - 1) as u32;
        Self::check_size(p, f)?;
        if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(FunctionFieldError::InvalidField("modulus must be monic with coefficients below p".into()));
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(FunctionFieldError::InvalidField("modulus is reducible".into()));
        }
        let q = p.pow(f) as u32;
        let to_vec = |x: u32| -> Vec<u64> {
            let mut v = Vec::with_capacity(f as usize);
            let mut r = x as u64;
            for _ in 0..f {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let from_vec = |v: &[u64]| -> u32 { v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32 };

        let mut add = vec![0u16; (q * q) as usize];
        let mut neg = vec![0u16; q as usize];
        for a in 0..q {
            let va = to_vec(a);
            neg[a as usize] = from_vec(&va.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u16;
            for b in 0..q {
                let vb = to_vec(b);
                let s: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_vec(&s) as u16;
            }
        }

        let mul_raw = |a: u32, b: u32| -> u32 {
            let prod = fp_poly::mul(&to_vec(a), &to_vec(b), p);
            let mut r = fp_poly::rem(&prod, &modulus, p);
            r.resize(f as usize, 0);
            from_vec(&r)
        };
        let order = q - 1;
        let mut generator = None;
        for g in 1..q {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = mul_raw(x, g);
                k += 1;
            }
            if k == order {
                generator = Some(g);
                break;
            }
        }
        let g = generator.expect("multiplicative group is cyclic");
        let mut exp = vec![0u16; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (k, e) in exp.iter_mut().enumerate() {
            *e = x as u16;
            log[x as usize] = k as u32;
            x = mul_raw(x, g);
        }

        let mut inner = Inner { p: p as u32, f, q, modulus, add, neg, exp, log, trace: Vec::new() };
        let mut trace = vec![0u16; q as usize];
        for (a, t) in trace.iter_mut().enumerate() {
            let mut acc = 0u32;
            let mut x = a as u32;
            for _ in 0..f {
                acc = inner.add(acc, x);
                x = inner.pow(x, p);
            }
            debug_assert!(acc < p as u32);
            *t = acc as u16;
        }
        inner.trace = trace;
        Ok(GroundField(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn f(&self) -> u32 {
        self.0.f
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul(a, b)
    }

    /// `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.0.q - 1;
        let l = self.0.log[a as usize];
        Some(self.0.exp[((order - l) % order) as usize] as u32)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        self.0.pow(a, e)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.0.p as i64) as u32
    }

    /// Absolute trace `F_q → F_p`, as an integer in `0..p`.
    pub fn trace(&self, a: u32) -> u32 {
        self.0.trace[a as usize] as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    pub fn same_as(&self, other: &GroundField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }
}

impl Inner {
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % order) as usize] as u32
    }

    fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % order)) % order) as usize] as u32
    }
}

impl PartialEq for GroundField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for GroundField {}

impl fmt::Debug for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, modulus {:?})", self.0.p, self.0.f, self.0.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields_are_fields() {
        for (p, f) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1)] {
            let k = GroundField::new(p, f).unwrap();
            for a in k.elements() {
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
                for b in k.elements() {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn trace_is_onto_prime_field() {
        let k = GroundField::new(2, 2).unwrap();
        let traces: Vec<u32> = k.elements().map(|a| k.trace(a)).collect();
        assert_eq!(traces.iter().filter(|&&t| t == 1).count(), 2);
        let k = GroundField::new(3, 2).unwrap();
        for t in 0..3 {
            assert_eq!(k.elements().filter(|&a| k.trace(a) == t).count(), 3);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroundField::new(4, 1).is_err());
        assert!(GroundField::new(2, 11).is_err());
        assert!(GroundField::with_modulus(3, vec![1, 0, 1, 0]).is_err());
        assert!(GroundField::with_modulus(5, vec![1, 0, 1]).is_err());
    }
}
