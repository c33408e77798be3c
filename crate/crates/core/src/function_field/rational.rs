use std::fmt;

use super::ground::GroundField;
use super::place::{Divisor, Place};
use super::poly::{factor, gcd, Poly};
use super::FunctionFieldError;

/// An element of `F_q(t)` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(k: &GroundField, num: Poly, den: Poly) -> Result<Self, FunctionFieldError> {
        if den.is_zero() {
            return Err(FunctionFieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(k, &num, &den);
        let num = num.div_rem(k, &g).0;
        let den = den.div_rem(k, &g).0;
        let c = k.inv(den.leading()).expect("nonzero");
        Ok(RationalFunction { num: num.scale(k, c), den: den.scale(k, c) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: u32) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn add(&self, k: &GroundField, b: &Self) -> Self {
        let num = self.num.mul(k, &b.den).add(k, &b.num.mul(k, &self.den));
        Self::new(k, num, self.den.mul(k, &b.den)).expect("nonzero denominator")
    }

    pub fn neg(&self, k: &GroundField) -> Self {
        RationalFunction { num: self.num.neg(k), den: self.den.clone() }
    }

    pub fn sub(&self, k: &GroundField, b: &Self) -> Self {
        self.add(k, &b.neg(k))
    }

    pub fn mul(&self, k: &GroundField, b: &Self) -> Self {
        Self::new(k, self.num.mul(k, &b.num), self.den.mul(k, &b.den)).expect("nonzero denominator")
    }

    pub fn inv(&self, k: &GroundField) -> Result<Self, FunctionFieldError> {
        Self::new(k, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, k: &GroundField, b: &Self) -> Result<Self, FunctionFieldError> {
        Ok(self.mul(k, &b.inv(k)?))
    }

    pub fn scale(&self, k: &GroundField, c: u32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(k, c), den: self.den.clone() }
    }

    pub fn pow(&self, k: &GroundField, e: i64) -> Result<Self, FunctionFieldError> {
        let base = if e < 0 { self.inv(k)? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(k, n), den: base.den.pow(k, n) })
    }

    /// `ord_v`, or `None` for zero.
    pub fn valuation_at(&self, k: &GroundField, v: &Place) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match v {
            Place::Finite(p) => {
                self.num.split_off_power(k, p).0 as i64 - self.den.split_off_power(k, p).0 as i64
            }
            Place::Infinity => self.den.deg() - self.num.deg(),
        })
    }

    /// `div(f)`; zero has no divisor.
    pub fn divisor(&self, k: &GroundField) -> Result<Divisor, FunctionFieldError> {
        if self.is_zero() {
            return Err(FunctionFieldError::InvalidInput("the zero function has no divisor".into()));
        }
        let mut d = Divisor::new();
        for (p, n) in factor(k, &self.num) {
            d.add_at(Place::Finite(p), n as i64);
        }
        for (p, n) in factor(k, &self.den) {
            d.add_at(Place::Finite(p), -(n as i64));
        }
        d.add_at(Place::Infinity, self.den.deg() - self.num.deg());
        Ok(d)
    }

    /// Finite places where `f` has a pole, in increasing order.
    pub fn finite_poles(&self, k: &GroundField) -> Vec<Place> {
        if self.den.is_one() {
            return Vec::new();
        }
        factor(k, &self.den).into_iter().map(|(p, _)| Place::Finite(p)).collect()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_divisor() {
        let k = GroundField::new(3, 1).unwrap();
        let t = Poly::t();
        let t1 = Poly::from_coeffs(vec![1, 1]);
        // 2t(t+1) / (t+1)^2 = 2t/(t+1)
        let r = RationalFunction::new(&k, t.mul(&k, &t1).scale(&k, 2), t1.mul(&k, &t1)).unwrap();
        assert_eq!(r.den(), &t1);
        assert_eq!(r.num(), &t.scale(&k, 2));
        let d = r.divisor(&k).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.get(&Place::Finite(t.clone())), 1);
        assert_eq!(d.get(&Place::Finite(t1)), -1);
        assert_eq!(d.get(&Place::Infinity), 0);
        assert_eq!(RationalFunction::t().valuation_at(&k, &Place::Infinity), Some(-1));
    }
}
