use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::config::{FieldConfig, Residue};
use super::intpoly;
use super::PadicError;

/// `ℓ`-adic valuation: an integer or `+∞` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

/// Certified information about the valuation of a difference `x − y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValuationBound {
    Exactly(Valuation),
    /// The known digits cancel; only a lower bound is certified.
    AtLeast(i64),
}

impl ValuationBound {
    pub fn at_least(self, k: i64) -> bool {
        match self {
            ValuationBound::Exactly(v) => v.at_least(k),
            ValuationBound::AtLeast(b) => b >= k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    /// `ℓ^val · num(α) / den` in the number field `Q[X]/(M)`, known exactly.
    /// `den > 0` is prime to `ℓ`, `num` is not divisible by `ℓ`, content and `den` coprime.
    Exact {
        val: i64,
        num: Vec<BigInt>,
        den: BigInt,
    },
    /// `ℓ^val · unit` with `unit` known modulo `ℓ^prec`, coefficients in `[0, ℓ^prec)`.
    Approx {
        val: i64,
        unit: Vec<BigInt>,
        prec: u32,
    },
}

/// An element of `Q_{ℓ^d}` with exact valuation and capped relative precision.
///
/// Values built from integers and rationals stay exact until they meet an approximate
/// operand (a Hensel root, say); exact cancellation then yields a genuine zero, while
/// cancellation of approximate digits is reported as [`PadicError::PrecisionLoss`].
#[derive(Clone, PartialEq, Eq)]
pub struct LocalNumber {
    field: FieldConfig,
    repr: Repr,
}

impl LocalNumber {
    pub fn zero(field: &FieldConfig) -> Self {
        LocalNumber { field: field.clone(), repr: Repr::Zero }
    }

    pub fn one(field: &FieldConfig) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &FieldConfig, k: i64) -> Self {
        Self::from_bigint(field, BigInt::from(k))
    }

    pub fn from_bigint(field: &FieldConfig, k: BigInt) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = k;
        Self::exact(field, 0, num, BigInt::one())
    }

    pub fn from_rational(field: &FieldConfig, num: i64, den: i64) -> Result<Self, PadicError> {
        if den == 0 {
            return Err(PadicError::DivisionByZero);
        }
        let mut coeffs = vec![BigInt::zero(); field.degree()];
        coeffs[0] = BigInt::from(num);
        Ok(Self::exact(field, 0, coeffs, BigInt::from(den)))
    }

    /// The exact element `Σ c_i α^i`, reduced modulo the configured modulus.
    pub fn from_int_coeffs(field: &FieldConfig, coeffs: &[BigInt]) -> Self {
        let mut v = coeffs.to_vec();
        v.resize(v.len().max(field.degree()), BigInt::zero());
        let v = intpoly::reduce_monic(v, field.modulus_big());
        Self::exact(field, 0, v, BigInt::one())
    }

    /// `ℓ^val · num(α) / den`, exact.
    pub fn from_exact_parts(
        field: &FieldConfig,
        val: i64,
        num: &[BigInt],
        den: &BigInt,
    ) -> Result<Self, PadicError> {
        if den.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let mut v = num.to_vec();
        v.resize(v.len().max(field.degree()), BigInt::zero());
        let v = intpoly::reduce_monic(v, field.modulus_big());
        Ok(Self::exact(field, val, v, den.clone()))
    }

    /// Lifts a residue to the exact element with the same digits in `[0, ℓ)`.
    pub fn lift_residue(field: &FieldConfig, r: &Residue) -> Self {
        let num: Vec<BigInt> = r.coeffs().iter().map(|&c| BigInt::from(c)).collect();
        Self::exact(field, 0, num, BigInt::one())
    }

    /// The uniformizer `ℓ`.
    pub fn uniformizer(field: &FieldConfig) -> Self {
        Self::from_integer(field, field.ell() as i64)
    }

    /// An approximate number `ℓ^val · unit` known to `prec` digits (capped at the field precision).
    pub fn from_approx_parts(
        field: &FieldConfig,
        val: i64,
        unit: Vec<BigInt>,
        prec: u32,
    ) -> Result<Self, PadicError> {
        if prec == 0 {
            return Err(PadicError::InvalidInput("relative precision must be positive".into()));
        }
        let prec = prec.min(field.precision());
        let mut unit = unit;
        unit.resize(unit.len().max(field.degree()), BigInt::zero());
        let mut unit = intpoly::reduce_monic(unit, field.modulus_big());
        intpoly::mod_all(&mut unit, &field.ell_pow(prec));
        let ell = BigInt::from(field.ell());
        if unit.iter().all(|c| c.mod_floor(&ell).is_zero()) {
            return Err(PadicError::InvalidInput("unit part must be nonzero modulo ell".into()));
        }
        Ok(LocalNumber { field: field.clone(), repr: Repr::Approx { val, unit, prec } })
    }

    fn exact(field: &FieldConfig, val: i64, num: Vec<BigInt>, den: BigInt) -> Self {
        LocalNumber { field: field.clone(), repr: normalize_exact(field, val, num, den) }
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// True for exact zero and exact number-field elements.
    pub fn is_exact(&self) -> bool {
        !matches!(self.repr, Repr::Approx { .. })
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Zero => Valuation::Infinity,
            Repr::Exact { val, .. } | Repr::Approx { val, .. } => Valuation::Finite(*val),
        }
    }

    /// Significant digits known, `None` for exact values.
    pub fn relative_precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Approx { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    /// The value is known modulo `ℓ^k` for this `k`; `None` for exact values.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Approx { val, prec, .. } => Some(val + *prec as i64),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.valuation().at_least(0)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    /// Unit part modulo `ℓ^k`; for approximate values `k` must not exceed the precision.
    pub(crate) fn unit_mod(&self, k: u32) -> Vec<BigInt> {
        let m = self.field.ell_pow(k);
        match &self.repr {
            Repr::Zero => vec![BigInt::zero(); self.field.degree()],
            Repr::Exact { num, den, .. } => {
                let dinv = intpoly::inv_mod(den, &m);
                num.iter().map(|c| (c * &dinv).mod_floor(&m)).collect()
            }
            Repr::Approx { unit, prec, .. } => {
                debug_assert!(k <= *prec);
                unit.iter().map(|c| c.mod_floor(&m)).collect()
            }
        }
    }

    /// Base-`ℓ` digits of each unit coefficient, least significant first.
    /// Exact values are expanded to the field precision.
    pub fn unit_digits(&self) -> Vec<Vec<u64>> {
        let k = match &self.repr {
            Repr::Zero => return Vec::new(),
            Repr::Exact { .. } => self.field.precision(),
            Repr::Approx { prec, .. } => *prec,
        };
        let ell = BigInt::from(self.field.ell());
        self.unit_mod(k)
            .into_iter()
            .map(|c| {
                let mut digits = Vec::with_capacity(k as usize);
                let mut x = c;
                for _ in 0..k {
                    let (q, r) = x.div_mod_floor(&ell);
                    digits.push(r.to_u64().unwrap_or(0));
                    x = q;
                }
                digits
            })
            .collect()
    }

    /// Exact representation `(val, num, den)` when available.
    pub fn exact_parts(&self) -> Option<(i64, &[BigInt], &BigInt)> {
        match &self.repr {
            Repr::Exact { val, num, den } => Some((*val, num, den)),
            _ => None,
        }
    }

    /// The value as a rational number when `d = 1` and the value is exact.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Zero => Some(BigRational::zero()),
            Repr::Exact { val, num, den } if self.field.degree() == 1 => {
                let ell = BigInt::from(self.field.ell());
                let scale = num_traits::pow(ell, val.unsigned_abs() as usize);
                let r = BigRational::new(num[0].clone(), den.clone());
                Some(if *val >= 0 {
                    r * BigRational::from_integer(scale)
                } else {
                    r / BigRational::from_integer(scale)
                })
            }
            _ => None,
        }
    }

    pub fn neg(&self) -> LocalNumber {
        let repr = match &self.repr {
            Repr::Zero => Repr::Zero,
            Repr::Exact { val, num, den } => Repr::Exact {
                val: *val,
                num: num.iter().map(|c| -c).collect(),
                den: den.clone(),
            },
            Repr::Approx { val, unit, prec } => {
                let m = self.field.ell_pow(*prec);
                Repr::Approx {
                    val: *val,
                    unit: unit.iter().map(|c| (-c).mod_floor(&m)).collect(),
                    prec: *prec,
                }
            }
        };
        LocalNumber { field: self.field.clone(), repr }
    }

    pub fn add(&self, other: &LocalNumber) -> Result<LocalNumber, PadicError> {
        self.field.ensure_same(&other.field)?;
        LocalNumber::sum(&self.field, [self, other])
    }

    pub fn sub(&self, other: &LocalNumber) -> Result<LocalNumber, PadicError> {
        self.field.ensure_same(&other.field)?;
        let neg = other.neg();
        LocalNumber::sum(&self.field, [self, &neg])
    }

    /// Sums all terms at once, so intermediate cancellation never loses precision.
    pub fn sum<'a, I>(field: &FieldConfig, terms: I) -> Result<LocalNumber, PadicError>
    where
        I: IntoIterator<Item = &'a LocalNumber>,
    {
        let mut exact_acc: Option<(i64, Vec<BigInt>, BigInt)> = None;
        let mut approx: Vec<&LocalNumber> = Vec::new();
        for t in terms {
            field.ensure_same(&t.field)?;
            match &t.repr {
                Repr::Zero => {}
                Repr::Exact { val, num, den } => {
                    exact_acc = Some(match exact_acc {
                        None => (*val, num.clone(), den.clone()),
                        Some((v0, n0, d0)) => exact_add(field, (v0, &n0, &d0), (*val, num, den)),
                    });
                }
                Repr::Approx { .. } => approx.push(t),
            }
        }
        let exact = match exact_acc {
            None => LocalNumber::zero(field),
            Some((v, n, d)) => LocalNumber::exact(field, v, n, d),
        };
        if approx.is_empty() {
            return Ok(exact);
        }
        let abs_prec = approx
            .iter()
            .filter_map(|t| t.absolute_precision())
            .min()
            .expect("approximate terms present");
        let mut live: Vec<&LocalNumber> = approx;
        if !exact.is_zero() {
            live.push(&exact);
        }
        let vmin = live
            .iter()
            .filter_map(|t| t.valuation().finite())
            .min()
            .expect("nonzero terms present");
        let span = (abs_prec - vmin) as u32;
        let modulus = field.ell_pow(span);
        let mut acc = vec![BigInt::zero(); field.degree()];
        for t in &live {
            let shift = (t.valuation().finite().unwrap() - vmin) as u32;
            if shift >= span {
                continue;
            }
            let unit = t.unit_mod(span - shift);
            let scale = field.ell_pow(shift);
            for (a, u) in acc.iter_mut().zip(unit) {
                *a += u * &scale;
            }
        }
        intpoly::mod_all(&mut acc, &modulus);
        let ell = BigInt::from(field.ell());
        let t = intpoly::content_val_capped(&acc, &ell, span);
        if t >= span {
            return Err(PadicError::PrecisionLoss { at_least: abs_prec });
        }
        let divisor = field.ell_pow(t);
        let prec = (span - t).min(field.precision());
        let m = field.ell_pow(prec);
        let unit = acc.iter().map(|c| (c / &divisor).mod_floor(&m)).collect();
        Ok(LocalNumber {
            field: field.clone(),
            repr: Repr::Approx { val: vmin + t as i64, unit, prec },
        })
    }

    pub fn mul(&self, other: &LocalNumber) -> Result<LocalNumber, PadicError> {
        self.field.ensure_same(&other.field)?;
        let field = &self.field;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Ok(LocalNumber::zero(field)),
            (
                Repr::Exact { val: v1, num: n1, den: d1 },
                Repr::Exact { val: v2, num: n2, den: d2 },
            ) => {
                let num = intpoly::mul_reduce(n1, n2, field.modulus_big());
                Ok(LocalNumber::exact(field, v1 + v2, num, d1 * d2))
            }
            _ => {
                let prec = self
                    .relative_precision()
                    .unwrap_or(u32::MAX)
                    .min(other.relative_precision().unwrap_or(u32::MAX))
                    .min(field.precision());
                let m = field.ell_pow(prec);
                let mut unit =
                    intpoly::mul_reduce(&self.unit_mod(prec), &other.unit_mod(prec), field.modulus_big());
                intpoly::mod_all(&mut unit, &m);
                let val = self.valuation().finite().unwrap() + other.valuation().finite().unwrap();
                Ok(LocalNumber { field: field.clone(), repr: Repr::Approx { val, unit, prec } })
            }
        }
    }

    /// Product of several factors; exact zero short-circuits.
    pub fn product<'a, I>(field: &FieldConfig, factors: I) -> Result<LocalNumber, PadicError>
    where
        I: IntoIterator<Item = &'a LocalNumber>,
    {
        let mut acc = LocalNumber::one(field);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    pub fn inv(&self) -> Result<LocalNumber, PadicError> {
        let field = &self.field;
        match &self.repr {
            Repr::Zero => Err(PadicError::DivisionByZero),
            Repr::Exact { val, num, den } => {
                let (inv_num, inv_den) = intpoly::rational_inverse(num, field.modulus_big())
                    .ok_or(PadicError::DivisionByZero)?;
                // (num/den)^{-1} = den · inv_num / inv_den
                let scaled: Vec<BigInt> = inv_num.iter().map(|c| c * den).collect();
                Ok(LocalNumber::exact(field, -val, scaled, inv_den))
            }
            Repr::Approx { val, unit, prec } => {
                let inv = unit_inverse_mod(field, unit, *prec);
                Ok(LocalNumber { field: field.clone(), repr: Repr::Approx { val: -val, unit: inv, prec: *prec } })
            }
        }
    }

    pub fn div(&self, other: &LocalNumber) -> Result<LocalNumber, PadicError> {
        self.field.ensure_same(&other.field)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<LocalNumber, PadicError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = LocalNumber::one(&self.field);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            exp >>= 1;
            if exp > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Image in the residue field; requires valuation ≥ 0.
    pub fn reduce(&self) -> Result<Residue, PadicError> {
        match self.valuation() {
            Valuation::Infinity => Ok(self.field.residue_zero()),
            Valuation::Finite(v) if v < 0 => Err(PadicError::NotIntegral),
            Valuation::Finite(v) if v > 0 => Ok(self.field.residue_zero()),
            Valuation::Finite(_) => {
                let coeffs: Vec<u64> = self
                    .unit_mod(1)
                    .iter()
                    .map(|c| c.to_u64().expect("digit below ell"))
                    .collect();
                Ok(self.field.residue(&coeffs))
            }
        }
    }

    /// Certified valuation of `self − other`.
    pub fn difference_valuation(&self, other: &LocalNumber) -> Result<ValuationBound, PadicError> {
        match self.sub(other) {
            Ok(d) => Ok(ValuationBound::Exactly(d.valuation())),
            Err(PadicError::PrecisionLoss { at_least }) => Ok(ValuationBound::AtLeast(at_least)),
            Err(e) => Err(e),
        }
    }

    /// True when `self − other` is exactly zero or cancels to all known digits.
    pub fn agrees_with(&self, other: &LocalNumber) -> bool {
        matches!(
            self.difference_valuation(other),
            Ok(ValuationBound::Exactly(Valuation::Infinity)) | Ok(ValuationBound::AtLeast(_))
        )
    }

    /// Drops exactness, keeping `prec` significant digits.
    pub fn to_approx(&self, prec: u32) -> LocalNumber {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Exact { val, .. } => {
                let prec = prec.clamp(1, self.field.precision());
                LocalNumber {
                    field: self.field.clone(),
                    repr: Repr::Approx { val: *val, unit: self.unit_mod(prec), prec },
                }
            }
            Repr::Approx { val, prec: p, .. } => {
                let prec = prec.clamp(1, *p);
                LocalNumber {
                    field: self.field.clone(),
                    repr: Repr::Approx { val: *val, unit: self.unit_mod(prec), prec },
                }
            }
        }
    }
}

fn exact_add(
    field: &FieldConfig,
    (v1, n1, d1): (i64, &[BigInt], &BigInt),
    (v2, n2, d2): (i64, &[BigInt], &BigInt),
) -> (i64, Vec<BigInt>, BigInt) {
    let vmin = v1.min(v2);
    let s1 = field.ell_pow((v1 - vmin) as u32) * d2;
    let s2 = field.ell_pow((v2 - vmin) as u32) * d1;
    let num = n1.iter().zip(n2).map(|(a, b)| a * &s1 + b * &s2).collect();
    (vmin, num, d1 * d2)
}

fn normalize_exact(field: &FieldConfig, mut val: i64, mut num: Vec<BigInt>, mut den: BigInt) -> Repr {
    let ell = BigInt::from(field.ell());
    let t = match intpoly::content_val(&num, &ell) {
        None => return Repr::Zero,
        Some(t) => t,
    };
    if den.is_negative() {
        den = -den;
        num.iter_mut().for_each(|c| *c = -&*c);
    }
    if t > 0 {
        let p = field.ell_pow(t);
        num.iter_mut().for_each(|c| *c = &*c / &p);
        val += t as i64;
    }
    let s = intpoly::int_val(&den, &ell);
    if s > 0 {
        den /= field.ell_pow(s);
        val -= s as i64;
    }
    let g = intpoly::content_gcd(&num).gcd(&den);
    if !g.is_one() {
        num.iter_mut().for_each(|c| *c = &*c / &g);
        den /= &g;
    }
    Repr::Exact { val, num, den }
}

/// Inverse of a unit modulo `ℓ^k` by Newton iteration from the residue inverse.
pub(crate) fn unit_inverse_mod(field: &FieldConfig, unit: &[BigInt], k: u32) -> Vec<BigInt> {
    let ell = BigInt::from(field.ell());
    let residue: Vec<u64> = unit.iter().map(|c| c.mod_floor(&ell).to_u64().unwrap()).collect();
    let r = field.residue(&residue);
    let r_inv = field.residue_inv(&r).expect("unit has nonzero residue");
    let mut y: Vec<BigInt> = r_inv.coeffs().iter().map(|&c| BigInt::from(c)).collect();
    let mut known = 1u32;
    while known < k {
        known = (known * 2).min(k);
        let m = field.ell_pow(known);
        let mut uy = intpoly::mul_reduce(unit, &y, field.modulus_big());
        intpoly::mod_all(&mut uy, &m);
        // y ← y·(2 − u·y)
        let mut corr: Vec<BigInt> = uy.iter().map(|c| -c).collect();
        corr[0] += 2;
        y = intpoly::mul_reduce(&y, &corr, field.modulus_big());
        intpoly::mod_all(&mut y, &m);
    }
    let m = field.ell_pow(k);
    intpoly::mod_all(&mut y, &m);
    y
}

impl fmt::Debug for LocalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LocalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ell = self.field.ell();
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Exact { .. } if self.field.degree() == 1 => {
                write!(f, "{}", self.to_rational().expect("degree one"))
            }
            Repr::Exact { val, num, den } => {
                let coeffs: Vec<String> = num.iter().map(|c| c.to_string()).collect();
                write!(f, "{ell}^{val}*[{}]", coeffs.join(", "))?;
                if !den.is_one() {
                    write!(f, "/{den}")?;
                }
                Ok(())
            }
            Repr::Approx { val, unit, prec } => {
                let coeffs: Vec<String> = unit.iter().map(|c| c.to_string()).collect();
                write!(f, "{ell}^{val}*[{}] + O({ell}^{})", coeffs.join(", "), val + *prec as i64)
            }
        }
    }
}

/// Orders residues of two numbers canonically; helper for sorting parameter lists.
pub fn compare_by_residue(a: &LocalNumber, b: &LocalNumber) -> Result<Ordering, PadicError> {
    Ok(a.reduce()?.cmp(&b.reduce()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldConfig {
        FieldConfig::new(5, 1, 4).unwrap()
    }

    #[test]
    fn add_small_integers() {
        let cfg = f5();
        let s = LocalNumber::from_integer(&cfg, 7).add(&LocalNumber::from_integer(&cfg, 3)).unwrap();
        assert_eq!(s.valuation(), Valuation::Finite(1));
        assert_eq!(s.unit_digits()[0][0], 2);
        assert_eq!(s.to_rational().unwrap(), BigRational::from_integer(10.into()));
    }

    #[test]
    fn multiplication_adds_valuations() {
        let cfg = f5();
        let u = LocalNumber::from_integer(&cfg, 3);
        let w = LocalNumber::from_integer(&cfg, 2);
        let x = LocalNumber::uniformizer(&cfg).pow(2).unwrap().mul(&u).unwrap();
        let y = LocalNumber::uniformizer(&cfg).pow(-1).unwrap().mul(&w).unwrap();
        let p = x.mul(&y).unwrap();
        assert_eq!(p.valuation(), Valuation::Finite(1));
        assert_eq!(p.reduce().unwrap(), cfg.residue_zero());
        assert_eq!(p.to_rational().unwrap(), BigRational::from_integer(30.into()));
    }

    #[test]
    fn sub_self_is_exact_zero() {
        let cfg = f5();
        let x = LocalNumber::from_rational(&cfg, 7, 3).unwrap();
        assert!(x.sub(&x).unwrap().is_zero());
        // an approximate value minus itself cannot be certified zero
        let a = x.to_approx(4);
        assert_eq!(a.sub(&a), Err(PadicError::PrecisionLoss { at_least: 4 }));
    }

    #[test]
    fn valuations_of_basic_values() {
        let cfg = f5();
        let ell = LocalNumber::uniformizer(&cfg);
        let u = LocalNumber::from_integer(&cfg, 2);
        assert_eq!(ell.pow(3).unwrap().mul(&u).unwrap().valuation(), Valuation::Finite(3));
        assert_eq!(LocalNumber::zero(&cfg).valuation(), Valuation::Infinity);
        assert_eq!(ell.mul(&u).unwrap().inv().unwrap().valuation(), Valuation::Finite(-1));
    }

    #[test]
    fn reduction_examples() {
        let cfg = f5();
        assert!(LocalNumber::from_integer(&cfg, 10).reduce().unwrap().is_zero());
        assert_eq!(LocalNumber::from_integer(&cfg, 7).reduce().unwrap(), cfg.residue_from_int(2));
        let inv = LocalNumber::uniformizer(&cfg).inv().unwrap();
        assert_eq!(inv.reduce(), Err(PadicError::NotIntegral));
    }

    #[test]
    fn approximate_cancellation_lowers_precision() {
        let cfg = FieldConfig::new(5, 1, 6).unwrap();
        let a = LocalNumber::from_integer(&cfg, 1).to_approx(6);
        let b = LocalNumber::from_integer(&cfg, 26).to_approx(6);
        let d = b.sub(&a).unwrap();
        assert_eq!(d.valuation(), Valuation::Finite(2));
        assert_eq!(d.relative_precision(), Some(4));
        assert_eq!(d.absolute_precision(), Some(6));
    }

    #[test]
    fn approx_inverse_matches_exact() {
        let cfg = FieldConfig::new(7, 2, 10).unwrap();
        let x = LocalNumber::from_int_coeffs(&cfg, &[BigInt::from(3), BigInt::from(5)]);
        let xi = x.inv().unwrap();
        assert!(xi.is_exact());
        assert!(x.mul(&xi).unwrap().sub(&LocalNumber::one(&cfg)).unwrap().is_zero());
        let xa = x.to_approx(10);
        let xai = xa.inv().unwrap();
        assert!(xai.agrees_with(&xi));
    }

    #[test]
    fn config_mismatch_rejected() {
        let a = LocalNumber::one(&f5());
        let b = LocalNumber::one(&FieldConfig::new(7, 1, 4).unwrap());
        assert_eq!(a.add(&b), Err(PadicError::ConfigMismatch));
    }
}
