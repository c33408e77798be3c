//! Dense polynomials over the prime field `Z/ℓ`, coefficients stored low degree first.
//!
//! These back the residue field `F_{ℓ^d}` and the irreducibility test for the
//! configured modulus. Every coefficient is kept in `[0, ℓ)`.

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `a` must be nonzero mod `m`.
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(m));
    pow_mod(a, m - 2, m)
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn add(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % m)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + m - b.get(i).copied().unwrap_or(0) % m) % m)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, m)) % m;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn div_rem(a: &[u64], b: &[u64], m: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], m);
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, m);
        q[dr - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let t = mul_mod(c, bj, m);
            r[dr - db + j] = (r[dr - db + j] + m - t) % m;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    div_rem(a, b, m).1
}

pub(crate) fn monic(a: &[u64], m: u64) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], m);
            a[..=d].iter().map(|&c| mul_mod(c, inv, m)).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, m);
        x = y;
        y = r;
    }
    monic(&x, m)
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)` and `g = gcd(a, b)` monic.
pub(crate) fn ext_gcd_left(a: &[u64], b: &[u64], m: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![1u64];
    let mut s1: Vec<u64> = Vec::new();
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, m);
        let s2 = sub(&s0, &mul(&q, &s1, m), m);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    match degree(&r0) {
        None => (Vec::new(), Vec::new()),
        Some(d) => {
            let inv = inv_mod(r0[d], m);
            let g = r0.iter().map(|&c| mul_mod(c, inv, m)).collect();
            let s = s0.iter().map(|&c| mul_mod(c, inv, m)).collect();
            (g, s)
        }
    }
}

pub(crate) fn mul_rem(a: &[u64], b: &[u64], f: &[u64], m: u64) -> Vec<u64> {
    rem(&mul(a, b, m), f, m)
}

pub(crate) fn pow_rem(base: &[u64], mut exp: u128, f: &[u64], m: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, m);
    let mut b = rem(base, f, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_rem(&acc, &b, f, m);
        }
        b = mul_rem(&b, &b, f, m);
        exp >>= 1;
    }
    acc
}

/// Irreducibility over `Z/m` by `gcd(X^{m^i} − X, f) = 1` for `i ≤ deg f / 2`.
pub(crate) fn is_irreducible(f: &[u64], m: u64) -> bool {
    let d = match degree(f) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = pow_rem(&h, m as u128, f, m);
        let g = gcd(&sub(&h, &x, m), f, m);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}
