//! Truncated expansions in the completions `k_v` and finite adeles.

use std::collections::BTreeMap;
use std::fmt;

use super::ground::GroundField;
use super::place::Place;
use super::poly::{inv_mod, Poly};
use super::rational::RationalFunction;
use super::FunctionFieldError;

/// Default number of known digits for expansions.
pub const DEFAULT_LOCAL_PRECISION: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    ExactZero,
    /// Zero modulo `π^abs`.
    Zero { abs: i64 },
    /// `π^val · unit`, the unit known modulo `π^prec`.
    Value { val: i64, unit: Poly, prec: u32 },
}

/// An element of `k_v` known to finite precision.
///
/// The unit part is a polynomial in the local variable (`t` at finite places, `s = 1/t` at
/// infinity) reduced modulo `π^prec`, where `π` is the uniformizer of the place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalElement {
    place: Place,
    kind: Kind,
}

fn pi_pow(k: &GroundField, place: &Place, n: u32) -> Poly {
    place.local_uniformizer().pow(k, n as u64)
}

fn reduce(k: &GroundField, place: &Place, a: &Poly, n: u32) -> Poly {
    match place {
        Place::Infinity => a.truncate(n as usize),
        Place::Finite(_) => a.rem(k, &pi_pow(k, place, n)),
    }
}

impl LocalElement {
    pub fn zero(place: Place) -> Self {
        LocalElement { place, kind: Kind::ExactZero }
    }

    /// `π^val · a` where `a` is a polynomial in the local variable, known modulo `π^prec`
    /// (relative to `π^val`).
    pub fn from_local_poly(k: &GroundField, place: Place, val: i64, a: &Poly, prec: u32) -> Self {
        let a = reduce(k, &place, a, prec);
        if a.is_zero() {
            return LocalElement { place, kind: Kind::Zero { abs: val + prec as i64 } };
        }
        let pi = place.local_uniformizer();
        let (e, unit) = a.split_off_power(k, &pi);
        let kind = Kind::Value { val: val + e as i64, unit, prec: prec - e };
        LocalElement { place, kind }
    }

    /// `π^n` to relative precision `prec`.
    pub fn uniformizer_power(place: Place, n: i64, prec: u32) -> Self {
        LocalElement { place, kind: Kind::Value { val: n, unit: Poly::one(), prec } }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn is_zero(&self) -> bool {
        !matches!(self.kind, Kind::Value { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.kind, Kind::ExactZero)
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.kind {
            Kind::Value { val, .. } => Some(val),
            _ => None,
        }
    }

    /// `None` for an exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.kind {
            Kind::ExactZero => None,
            Kind::Zero { abs } => Some(abs),
            Kind::Value { val, prec, .. } => Some(val + prec as i64),
        }
    }

    pub fn relative_precision(&self) -> Option<u32> {
        match self.kind {
            Kind::Value { prec, .. } => Some(prec),
            _ => None,
        }
    }

    /// Unit part as a polynomial in the local variable.
    pub fn unit(&self) -> Option<&Poly> {
        match &self.kind {
            Kind::Value { unit, .. } => Some(unit),
            _ => None,
        }
    }

    fn insufficient(&self, needed: i64) -> FunctionFieldError {
        FunctionFieldError::InsufficientPrecision {
            place: self.place.to_string(),
            needed,
            available: self.absolute_precision().unwrap_or(i64::MAX),
        }
    }

    fn check_place(&self, other: &LocalElement) -> Result<(), FunctionFieldError> {
        if self.place != other.place {
            return Err(FunctionFieldError::PlaceMismatch);
        }
        Ok(())
    }

    /// Digit at absolute index `i`: a polynomial of degree `< deg v`.
    pub fn digit(&self, k: &GroundField, i: i64) -> Result<Poly, FunctionFieldError> {
        match &self.kind {
            Kind::ExactZero => Ok(Poly::zero()),
            Kind::Zero { abs } => {
                if i < *abs {
                    Ok(Poly::zero())
                } else {
                    Err(self.insufficient(i + 1))
                }
            }
            Kind::Value { val, unit, prec } => {
                if i < *val {
                    return Ok(Poly::zero());
                }
                if i >= val + *prec as i64 {
                    return Err(self.insufficient(i + 1));
                }
                let j = (i - val) as usize;
                match &self.place {
                    Place::Infinity => Ok(Poly::constant(unit.coeff(j))),
                    Place::Finite(p) => {
                        let mut cur = unit.clone();
                        for _ in 0..j {
                            cur = cur.div_rem(k, p).0;
                        }
                        Ok(cur.rem(k, p))
                    }
                }
            }
        }
    }

    /// All known digits from the valuation up.
    pub fn digits(&self, k: &GroundField) -> Vec<Poly> {
        match &self.kind {
            Kind::Value { val, prec, .. } => {
                (0..*prec as i64).map(|j| self.digit(k, val + j).expect("within precision")).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Polynomial `A` in the local variable with `x ≡ A mod π^n`; needs `x` integral and known
    /// to absolute precision `n`.
    pub fn to_poly_mod(&self, k: &GroundField, n: i64) -> Result<Poly, FunctionFieldError> {
        if n <= 0 {
            return Ok(Poly::zero());
        }
        if let Some(abs) = self.absolute_precision() {
            if abs < n {
                return Err(self.insufficient(n));
            }
        }
        match &self.kind {
            Kind::Value { val, unit, .. } => {
                if *val < 0 {
                    return Err(FunctionFieldError::InvalidInput(format!("element is not integral at {}", self.place)));
                }
                if *val >= n {
                    return Ok(Poly::zero());
                }
                let shifted = unit.mul(k, &pi_pow(k, &self.place, *val as u32));
                Ok(reduce(k, &self.place, &shifted, n as u32))
            }
            _ => Ok(Poly::zero()),
        }
    }

    pub fn neg(&self, k: &GroundField) -> Self {
        match &self.kind {
            Kind::Value { val, unit, prec } => LocalElement {
                place: self.place.clone(),
                kind: Kind::Value { val: *val, unit: unit.neg(k), prec: *prec },
            },
            _ => self.clone(),
        }
    }

    pub fn add(&self, k: &GroundField, other: &Self) -> Result<Self, FunctionFieldError> {
        self.check_place(other)?;
        let abs = match (self.absolute_precision(), other.absolute_precision()) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => a.min(b),
        };
        let (v, w) = match (self.valuation(), other.valuation()) {
            (None, None) => return Ok(LocalElement { place: self.place.clone(), kind: Kind::Zero { abs } }),
            (Some(v), None) => (v, abs),
            (None, Some(w)) => (abs, w),
            (Some(v), Some(w)) => (v, w),
        };
        let m = v.min(w);
        if abs <= m {
            return Ok(LocalElement { place: self.place.clone(), kind: Kind::Zero { abs } });
        }
        let term = |x: &LocalElement, vx: i64| -> Poly {
            match x.unit() {
                Some(u) => u.mul(k, &pi_pow(k, &x.place, (vx - m) as u32)),
                None => Poly::zero(),
            }
        };
        let sum = term(self, v).add(k, &term(other, w));
        Ok(Self::from_local_poly(k, self.place.clone(), m, &sum, (abs - m) as u32))
    }

    pub fn sub(&self, k: &GroundField, other: &Self) -> Result<Self, FunctionFieldError> {
        self.add(k, &other.neg(k))
    }

    pub fn mul(&self, k: &GroundField, other: &Self) -> Result<Self, FunctionFieldError> {
        self.check_place(other)?;
        let place = self.place.clone();
        match (&self.kind, &other.kind) {
            (Kind::ExactZero, _) | (_, Kind::ExactZero) => Ok(Self::zero(place)),
            (Kind::Zero { abs: a }, Kind::Zero { abs: b }) => Ok(LocalElement { place, kind: Kind::Zero { abs: a + b } }),
            (Kind::Zero { abs }, Kind::Value { val, .. }) | (Kind::Value { val, .. }, Kind::Zero { abs }) => {
                Ok(LocalElement { place, kind: Kind::Zero { abs: abs + val } })
            }
            (Kind::Value { val: v, unit: a, prec: pa }, Kind::Value { val: w, unit: b, prec: pb }) => {
                let prec = (*pa).min(*pb);
                let unit = reduce(k, &place, &a.mul(k, b), prec);
                Ok(LocalElement { place, kind: Kind::Value { val: v + w, unit, prec } })
            }
        }
    }

    /// Multiplication by `π^n`.
    pub fn shift(&self, n: i64) -> Self {
        let kind = match &self.kind {
            Kind::ExactZero => Kind::ExactZero,
            Kind::Zero { abs } => Kind::Zero { abs: abs + n },
            Kind::Value { val, unit, prec } => Kind::Value { val: val + n, unit: unit.clone(), prec: *prec },
        };
        LocalElement { place: self.place.clone(), kind }
    }

    pub fn inv(&self, k: &GroundField) -> Result<Self, FunctionFieldError> {
        match &self.kind {
            Kind::ExactZero => Err(FunctionFieldError::DivisionByZero),
            Kind::Zero { abs } => Err(self.insufficient(abs + 1)),
            Kind::Value { val, unit, prec } => {
                let m = pi_pow(k, &self.place, *prec);
                let inv = inv_mod(k, unit, &m).expect("units are invertible");
                Ok(LocalElement { place: self.place.clone(), kind: Kind::Value { val: -val, unit: inv, prec: *prec } })
            }
        }
    }

    /// Whether `self − other` lies in `π^n O_v`, given the known digits. Errors when
    /// precision does not decide it.
    pub fn congruent_mod(&self, k: &GroundField, other: &Self, n: i64) -> Result<bool, FunctionFieldError> {
        let d = self.sub(k, other)?;
        match (d.valuation(), d.absolute_precision()) {
            (Some(v), _) => Ok(v >= n),
            (None, None) => Ok(true),
            (None, Some(abs)) if abs >= n => Ok(true),
            (None, Some(abs)) => Err(d.insufficient(abs.max(n))),
        }
    }
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::ExactZero => write!(f, "0 at {}", self.place),
            Kind::Zero { abs } => write!(f, "O(pi^{abs}) at {}", self.place),
            Kind::Value { val, unit, prec } => {
                write!(f, "pi^{val} * ({unit}) + O(pi^{}) at {}", val + *prec as i64, self.place)
            }
        }
    }
}

/// Laurent expansion of `r` at `v` with `prec` known digits.
pub fn expand_at(k: &GroundField, r: &RationalFunction, v: &Place, prec: u32) -> LocalElement {
    assert!(prec >= 1, "precision must be positive");
    if r.is_zero() {
        return LocalElement::zero(v.clone());
    }
    let (val, n, d) = match v {
        Place::Finite(p) => {
            let (a, n) = r.num().split_off_power(k, p);
            let (b, d) = r.den().split_off_power(k, p);
            (a as i64 - b as i64, n, d)
        }
        Place::Infinity => {
            let dn = r.num().degree().expect("nonzero");
            let dd = r.den().degree().expect("nonzero");
            (dd as i64 - dn as i64, r.num().reverse(dn), r.den().reverse(dd))
        }
    };
    let m = pi_pow(k, v, prec);
    let dinv = inv_mod(k, &d, &m).expect("coprime to the uniformizer");
    let unit = reduce(k, v, &n.mul(k, &dinv), prec);
    LocalElement { place: v.clone(), kind: Kind::Value { val, unit, prec } }
}

/// Expansion known at least to absolute precision `abs`.
pub fn expand_to_abs(k: &GroundField, r: &RationalFunction, v: &Place, abs: i64) -> LocalElement {
    match r.valuation_at(k, v) {
        None => LocalElement::zero(v.clone()),
        Some(val) => expand_at(k, r, v, (abs - val).max(1) as u32),
    }
}

/// A finitely supported adele; unlisted components are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Adele {
    components: BTreeMap<Place, LocalElement>,
}

impl Adele {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_components<I: IntoIterator<Item = LocalElement>>(items: I) -> Self {
        let mut a = Adele::new();
        for x in items {
            a.set(x);
        }
        a
    }

    /// `r` placed at each of `places`.
    pub fn diagonal(k: &GroundField, r: &RationalFunction, places: &[Place], prec: u32) -> Self {
        Self::from_components(places.iter().map(|v| expand_at(k, r, v, prec)))
    }

    pub fn set(&mut self, x: LocalElement) {
        if x.is_exact_zero() {
            self.components.remove(x.place());
        } else {
            self.components.insert(x.place().clone(), x);
        }
    }

    pub fn get(&self, v: &Place) -> Option<&LocalElement> {
        self.components.get(v)
    }

    /// Component at `v`, zero when unlisted.
    pub fn component(&self, v: &Place) -> LocalElement {
        self.components.get(v).cloned().unwrap_or_else(|| LocalElement::zero(v.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &LocalElement)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_expansions() {
        let k = GroundField::new(3, 1).unwrap();
        let t = Place::Finite(Poly::t());
        let inv_t = RationalFunction::new(&k, Poly::one(), Poly::t()).unwrap();
        let x = expand_at(&k, &inv_t, &t, 4);
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.digit(&k, -1).unwrap(), Poly::one());
        assert_eq!(x.digit(&k, 0).unwrap(), Poly::zero());
        assert_eq!(expand_at(&k, &RationalFunction::t(), &Place::Infinity, 4).valuation(), Some(-1));
        let t1 = Poly::from_coeffs(vec![1, 1]);
        let y = expand_at(&k, &RationalFunction::from_poly(t1.clone()), &Place::Finite(t1), 4);
        assert_eq!(y.valuation(), Some(1));
    }

    #[test]
    fn geometric_series_at_infinity() {
        // 1/(t − 1) = s/(1 − s) = s + s^2 + ⋯
        let k = GroundField::new(5, 1).unwrap();
        let r = RationalFunction::new(&k, Poly::one(), Poly::from_coeffs(vec![4, 1])).unwrap();
        let x = expand_at(&k, &r, &Place::Infinity, 5);
        assert_eq!(x.valuation(), Some(1));
        assert!(x.digits(&k).iter().all(|d| d.is_one()));
    }

    #[test]
    fn arithmetic_matches_rational_arithmetic() {
        let k = GroundField::new(3, 1).unwrap();
        let p = Place::Finite(Poly::from_coeffs(vec![1, 0, 1]));
        let a = RationalFunction::new(&k, Poly::from_coeffs(vec![2, 1, 1]), Poly::from_coeffs(vec![1, 0, 1])).unwrap();
        let b = RationalFunction::new(&k, Poly::from_coeffs(vec![1, 2]), Poly::from_coeffs(vec![0, 1, 1])).unwrap();
        let m = 6;
        let (ea, eb) = (expand_at(&k, &a, &p, m), expand_at(&k, &b, &p, m));
        let s = ea.add(&k, &eb).unwrap();
        assert!(s.congruent_mod(&k, &expand_at(&k, &a.add(&k, &b), &p, m), 5).unwrap());
        let pr = ea.mul(&k, &eb).unwrap();
        assert_eq!(pr, expand_at(&k, &a.mul(&k, &b), &p, m));
        assert_eq!(eb.inv(&k).unwrap(), expand_at(&k, &b.inv(&k).unwrap(), &p, m));
    }
}
