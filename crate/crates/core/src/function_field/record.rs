//! JSON shapes for ground fields, places, divisors, rational functions and local elements.
//!
//! Field elements are integers `0 ≤ c < q` encoding `Σ c_i p^i` in the polynomial basis of
//! `F_q`; polynomial coefficient arrays list the constant term first.

use serde::{Deserialize, Serialize};

use super::ground::GroundField;
use super::local::{Adele, LocalElement};
use super::place::{Divisor, Place};
use super::poly::Poly;
use super::rational::RationalFunction;
use super::FunctionFieldError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundFieldRecord {
    pub p: u64,
    pub f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl GroundFieldRecord {
    pub fn to_field(&self) -> Result<GroundField, FunctionFieldError> {
        match &self.modulus {
            Some(m) => {
                if m.len() != self.f as usize + 1 {
                    return Err(FunctionFieldError::InvalidField("modulus degree differs from f".into()));
                }
                GroundField::with_modulus(self.p, m.clone())
            }
            None => GroundField::new(self.p, self.f),
        }
    }

    pub fn from_field(k: &GroundField) -> Self {
        GroundFieldRecord { p: k.p() as u64, f: k.f(), modulus: Some(k.modulus().to_vec()) }
    }
}

fn check_coeffs(k: &GroundField, c: &[u32]) -> Result<Poly, FunctionFieldError> {
    if let Some(bad) = c.iter().find(|&&x| x >= k.q()) {
        return Err(FunctionFieldError::InvalidInput(format!("coefficient {bad} is not below q = {}", k.q())));
    }
    Ok(Poly::from_coeffs(c.to_vec()))
}

/// `{"finite": [coeffs]}` or `{"infinity": true}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceRecord {
    Finite(Vec<u32>),
    Infinity(bool),
}

impl PlaceRecord {
    pub fn to_place(&self, k: &GroundField) -> Result<Place, FunctionFieldError> {
        match self {
            PlaceRecord::Finite(c) => Place::finite(k, check_coeffs(k, c)?),
            PlaceRecord::Infinity(true) => Ok(Place::Infinity),
            PlaceRecord::Infinity(false) => Err(FunctionFieldError::InvalidInput("\"infinity\" must be true".into())),
        }
    }

    pub fn from_place(v: &Place) -> Self {
        match v {
            Place::Finite(p) => PlaceRecord::Finite(p.coeffs().to_vec()),
            Place::Infinity => PlaceRecord::Infinity(true),
        }
    }
}

/// `[[place, n], …]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorRecord(pub Vec<(PlaceRecord, i64)>);

impl DivisorRecord {
    pub fn to_divisor(&self, k: &GroundField) -> Result<Divisor, FunctionFieldError> {
        let mut d = Divisor::new();
        for (p, n) in &self.0 {
            d.add_at(p.to_place(k)?, *n);
        }
        Ok(d)
    }

    pub fn from_divisor(d: &Divisor) -> Self {
        DivisorRecord(d.iter().map(|(v, n)| (PlaceRecord::from_place(v), n)).collect())
    }
}

fn one() -> Vec<u32> {
    vec![1]
}

/// `{"num": [coeffs], "den": [coeffs]}`; the denominator defaults to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionRecord {
    pub num: Vec<u32>,
    #[serde(default = "one")]
    pub den: Vec<u32>,
}

impl RationalFunctionRecord {
    pub fn to_function(&self, k: &GroundField) -> Result<RationalFunction, FunctionFieldError> {
        RationalFunction::new(k, check_coeffs(k, &self.num)?, check_coeffs(k, &self.den)?)
    }

    pub fn from_function(r: &RationalFunction) -> Self {
        RationalFunctionRecord { num: r.num().coeffs().to_vec(), den: r.den().coeffs().to_vec() }
    }
}

/// `{place, valuation, digits, precision}` with `digits[i]` the digit of index
/// `valuation + i`; a `null` valuation is an exact zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalElementRecord {
    pub place: PlaceRecord,
    pub valuation: Option<i64>,
    #[serde(default)]
    pub digits: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

impl LocalElementRecord {
    pub fn to_element(&self, k: &GroundField) -> Result<LocalElement, FunctionFieldError> {
        let place = self.place.to_place(k)?;
        let Some(val) = self.valuation else {
            return Ok(LocalElement::zero(place));
        };
        let pi = place.local_uniformizer();
        let mut a = Poly::zero();
        let mut power = Poly::one();
        for d in &self.digits {
            let d = check_coeffs(k, d)?;
            if d.degree().unwrap_or(0) >= place.degree() {
                return Err(FunctionFieldError::InvalidInput(format!("digit {d} too large for {place}")));
            }
            a = a.add(k, &d.mul(k, &power));
            power = power.mul(k, &pi);
        }
        let prec = self.precision.unwrap_or(self.digits.len() as u32).max(1);
        Ok(LocalElement::from_local_poly(k, place, val, &a, prec))
    }

    pub fn from_element(k: &GroundField, x: &LocalElement) -> Self {
        LocalElementRecord {
            place: PlaceRecord::from_place(x.place()),
            valuation: x.valuation(),
            digits: x.digits(k).iter().map(|d| d.coeffs().to_vec()).collect(),
            precision: x.relative_precision(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdeleRecord(pub Vec<LocalElementRecord>);

impl AdeleRecord {
    pub fn to_adele(&self, k: &GroundField) -> Result<Adele, FunctionFieldError> {
        let mut a = Adele::new();
        for r in &self.0 {
            let x = r.to_element(k)?;
            if a.get(x.place()).is_some() {
                return Err(FunctionFieldError::InvalidInput(format!("place {} listed twice", x.place())));
            }
            a.set(x);
        }
        Ok(a)
    }

    pub fn from_adele(k: &GroundField, a: &Adele) -> Self {
        AdeleRecord(a.iter().map(|(_, x)| LocalElementRecord::from_element(k, x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::local::expand_at;

    #[test]
    fn round_trips() {
        let k = GroundField::new(3, 1).unwrap();
        let place: PlaceRecord = serde_json::from_str(r#"{"finite":[1,0,1]}"#).unwrap();
        let v = place.to_place(&k).unwrap();
        let inf: PlaceRecord = serde_json::from_str(r#"{"infinity":true}"#).unwrap();
        assert_eq!(inf.to_place(&k).unwrap(), Place::Infinity);
        let d: DivisorRecord = serde_json::from_str(r#"[[{"finite":[0,1]},2],[{"infinity":true},-1]]"#).unwrap();
        assert_eq!(d.to_divisor(&k).unwrap().degree(), 1);
        let r = RationalFunction::new(&k, Poly::from_coeffs(vec![1, 2]), Poly::from_coeffs(vec![1, 0, 1])).unwrap();
        let x = expand_at(&k, &r, &v, 5);
        let rec = LocalElementRecord::from_element(&k, &x);
        assert_eq!(rec.to_element(&k).unwrap(), x);
        let bad: PlaceRecord = serde_json::from_str(r#"{"finite":[1,0,0,1]}"#).unwrap();
        assert!(bad.to_place(&k).is_err());
    }
}
