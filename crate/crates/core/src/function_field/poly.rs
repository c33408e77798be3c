//! Dense polynomials over a [`GroundField`].

use std::cmp::Ordering;
use std::fmt;

use super::ground::GroundField;

/// Coefficients constant term first, with no trailing zeros.
///
/// Polynomials are ordered by degree, then lexicographically from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<u32>);

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn from_coeffs(mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn constant(c: u32) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly(vec![0, 1])
    }

    /// `c·t^n`.
    pub fn monomial(c: u32, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Poly::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    /// Coefficient of `t^i` (zero past the end).
    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree with `deg 0 = −1`.
    pub fn deg(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn leading(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, k: &GroundField, b: &Poly) -> Poly {
        let n = self.0.len().max(b.0.len());
        Poly::from_coeffs((0..n).map(|i| k.add(self.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, k: &GroundField, b: &Poly) -> Poly {
        let n = self.0.len().max(b.0.len());
        Poly::from_coeffs((0..n).map(|i| k.sub(self.coeff(i), b.coeff(i))).collect())
    }

    pub fn neg(&self, k: &GroundField) -> Poly {
        Poly(self.0.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn scale(&self, k: &GroundField, c: u32) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&x| k.mul(x, c)).collect())
    }

    pub fn mul(&self, k: &GroundField, b: &Poly) -> Poly {
        if self.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.0.len() + b.0.len() - 1];
        for (i, &x) in self.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; n];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    /// Keeps the coefficients of `t^0, …, t^{n−1}`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.0.iter().take(n).copied().collect())
    }

    /// `t^n · self(1/t)`; requires `n ≥ deg`.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut v = vec![0; n + 1];
        for (i, &c) in self.0.iter().enumerate() {
            v[n - i] = c;
        }
        Poly::from_coeffs(v)
    }

    pub fn pow(&self, k: &GroundField, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base);
            }
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, k: &GroundField, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = k.inv(b.leading()).expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        if r.len() <= db {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0u32; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = k.mul(r[i], lead_inv);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &bj) in b.0.iter().enumerate() {
                r[i - db + j] = k.sub(r[i - db + j], k.mul(c, bj));
            }
        }
        r.truncate(db);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, k: &GroundField, b: &Poly) -> Poly {
        self.div_rem(k, b).1
    }

    pub fn divides(&self, k: &GroundField, a: &Poly) -> bool {
        a.rem(k, self).is_zero()
    }

    pub fn monic(&self, k: &GroundField) -> Poly {
        match k.inv(self.leading()) {
            None => Poly::zero(),
            Some(inv) => self.scale(k, inv),
        }
    }

    pub fn eval(&self, k: &GroundField, x: u32) -> u32 {
        self.0.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// Number of times `p` divides `self`, and the cofactor. `self` must be nonzero.
    pub fn split_off_power(&self, k: &GroundField, p: &Poly) -> (u32, Poly) {
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(k, p);
            if !r.is_zero() {
                return (n, cur);
            }
            cur = q;
            n += 1;
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(k: &GroundField, a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem(k, &y);
        x = y;
        y = r;
    }
    x.monic(k)
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)` monic.
pub fn ext_gcd(k: &GroundField, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(k, &r1);
        let s = s0.sub(k, &q.mul(k, &s1));
        let t = t0.sub(k, &q.mul(k, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match k.inv(r0.leading()) {
        None => (Poly::zero(), s0, t0),
        Some(c) => (r0.scale(k, c), s0.scale(k, c), t0.scale(k, c)),
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(k: &GroundField, a: &Poly, m: &Poly) -> Option<Poly> {
    let (g, s, _) = ext_gcd(k, &a.rem(k, m), m);
    if g.is_one() {
        Some(s.rem(k, m))
    } else {
        None
    }
}

pub fn mul_mod(k: &GroundField, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    a.mul(k, b).rem(k, m)
}

pub fn pow_mod(k: &GroundField, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut b = base.rem(k, m);
    let mut acc = Poly::one().rem(k, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(k, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(k, &b, &b, m);
        }
    }
    acc
}

/// `x^{q^i} mod m` by repeated `q`-th powers.
fn frobenius_iter(k: &GroundField, x: &Poly, i: usize, m: &Poly) -> Poly {
    let mut y = x.rem(k, m);
    for _ in 0..i {
        y = pow_mod(k, &y, k.q() as u64, m);
    }
    y
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test.
pub fn is_irreducible(k: &GroundField, f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic(k);
    let t = Poly::t();
    if frobenius_iter(k, &t, n, &f) != t.rem(k, &f) {
        return false;
    }
    prime_factors(n).into_iter().all(|r| {
        let y = frobenius_iter(k, &t, n / r, &f);
        gcd(k, &f, &y.sub(k, &t)).is_one()
    })
}

/// Monic polynomials of degree `e`, in increasing order.
pub fn monic_polys(k: &GroundField, e: usize) -> Vec<Poly> {
    let q = k.q() as u64;
    let count = q.pow(e as u32);
    let mut out: Vec<Poly> = (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(e + 1);
            for _ in 0..e {
                c.push((idx % q) as u32);
                idx /= q;
            }
            c.push(1);
            Poly(c)
        })
        .collect();
    out.sort();
    out
}

/// Monic irreducible polynomials of degree `e`, in increasing order.
pub fn monic_irreducibles(k: &GroundField, e: usize) -> Vec<Poly> {
    monic_polys(k, e).into_iter().filter(|f| is_irreducible(k, f)).collect()
}

/// Monic irreducible factors with multiplicities, sorted. The leading constant is dropped.
pub fn factor(k: &GroundField, f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "cannot factor zero");
    let mut g = f.monic(k);
    let mut out = Vec::new();
    let t = Poly::t();
    let mut i = 0;
    let mut xq = Poly::zero();
    while g.deg() > 0 {
        i += 1;
        xq = if i == 1 { frobenius_iter(k, &t, 1, &g) } else { pow_mod(k, &xq, k.q() as u64, &g) };
        let h = gcd(k, &g, &xq.sub(k, &t.rem(k, &g)));
        if h.deg() > 0 {
            for p in equal_degree_split(k, &h, i) {
                let (n, rest) = g.split_off_power(k, &p);
                out.push((p, n));
                g = rest;
            }
            xq = xq.rem(k, &g);
        }
    }
    out.sort();
    out
}

/// Splits a squarefree product of irreducibles of degree `e`.
fn equal_degree_split(k: &GroundField, h: &Poly, e: usize) -> Vec<Poly> {
    let n = h.degree().unwrap_or(0);
    if n <= e {
        return vec![h.monic(k)];
    }
    let q = k.q() as u64;
    // deterministic sweep over non-constant polynomials of degree < n
    let mut idx: u64 = q;
    loop {
        let a = {
            let mut c = Vec::new();
            let mut r = idx;
            while r > 0 {
                c.push((r % q) as u32);
                r /= q;
            }
            Poly::from_coeffs(c)
        };
        idx += 1;
        if a.degree().unwrap_or(0) >= n {
            panic!("equal-degree splitting found no splitting element");
        }
        let b = if k.p() == 2 {
            // absolute trace into F_2
            let steps = k.f() as usize * e;
            let mut acc = Poly::zero();
            let mut y = a.rem(k, h);
            for _ in 0..steps {
                acc = acc.add(k, &y);
                y = mul_mod(k, &y, &y, h);
            }
            acc
        } else {
            // a^{(q^e − 1)/2} = (a · a^q ⋯ a^{q^{e−1}})^{(q−1)/2}
            let mut norm = Poly::one();
            let mut y = a.rem(k, h);
            for _ in 0..e {
                norm = mul_mod(k, &norm, &y, h);
                y = pow_mod(k, &y, q, h);
            }
            pow_mod(k, &norm, (q - 1) / 2, h).sub(k, &Poly::one())
        };
        let g = gcd(k, h, &b);
        if g.deg() > 0 && g.deg() < h.deg() {
            let (other, _) = h.div_rem(k, &g);
            let mut out = equal_degree_split(k, &g, e);
            out.extend(equal_degree_split(k, &other.monic(k), e));
            return out;
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}
