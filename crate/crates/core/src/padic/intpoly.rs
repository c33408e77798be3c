//! Integer and rational polynomial helpers for `Z[X]/(M)` and `Q[X]/(M)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Product in `Z[X]/(M)` for monic `M` of degree `d`; inputs and output have length `d`.
pub(crate) fn mul_reduce(a: &[BigInt], b: &[BigInt], modulus: &[BigInt]) -> Vec<BigInt> {
    let d = modulus.len() - 1;
    if d == 1 {
        // M = X + c: α = −c, but elements are constants
        return vec![&a[0] * &b[0]];
    }
    let mut prod = vec![BigInt::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    reduce_monic(prod, modulus)
}

pub(crate) fn reduce_monic(mut prod: Vec<BigInt>, modulus: &[BigInt]) -> Vec<BigInt> {
    let d = modulus.len() - 1;
    for i in (d..prod.len()).rev() {
        let c = std::mem::take(&mut prod[i]);
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            prod[i - d + j] -= &c * &modulus[j];
        }
    }
    prod.truncate(d);
    prod.resize(d, BigInt::zero());
    prod
}

pub(crate) fn mod_all(v: &mut [BigInt], m: &BigInt) {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
}

/// `ℓ`-adic valuation of a nonzero integer.
pub(crate) fn int_val(x: &BigInt, ell: &BigInt) -> u32 {
    debug_assert!(!x.is_zero());
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(ell);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

/// Minimum valuation over the nonzero coefficients, `None` if all vanish.
pub(crate) fn content_val(v: &[BigInt], ell: &BigInt) -> Option<u32> {
    v.iter().filter(|c| !c.is_zero()).map(|c| int_val(c, ell)).min()
}

/// Minimum valuation capped at `cap`, treating zero as `cap`.
pub(crate) fn content_val_capped(v: &[BigInt], ell: &BigInt, cap: u32) -> u32 {
    content_val(v, ell).map_or(cap, |t| t.min(cap))
}

pub(crate) fn content_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Inverse of `a` modulo `m` (assumed coprime).
pub(crate) fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

// ---- rational polynomials, constant term first ----

fn rtrim(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn rsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    rtrim(&mut out);
    out
}

fn rmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rtrim(&mut out);
    out
}

fn rdiv_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    rtrim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &c * bj;
        }
        q[dr - db] = c;
        r.pop();
        rtrim(&mut r);
    }
    rtrim(&mut q);
    (q, r)
}

/// Inverse of `a` in `Q[X]/(M)`, returned as integer numerators over a positive common denominator.
/// `None` when `a` and `M` share a factor.
pub(crate) fn rational_inverse(a: &[BigInt], modulus: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let d = modulus.len() - 1;
    let to_r = |v: &[BigInt]| -> Vec<BigRational> {
        let mut out: Vec<BigRational> = v.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        rtrim(&mut out);
        out
    };
    let mut r0 = to_r(modulus);
    let mut r1 = to_r(a);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = rdiv_rem(&r0, &r1);
        let s2 = rsub(&s0, &rmul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd; s0·a ≡ r0 (mod M)
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].clone();
    let mut inv: Vec<BigRational> = s0.into_iter().map(|c| c / &g).collect();
    inv.resize(d, BigRational::zero());
    let den = inv
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let nums = inv
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    Some((nums, den.abs()))
}
