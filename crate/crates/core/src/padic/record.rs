//! JSON-facing records for field configurations and local numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::config::{FieldConfig, DEFAULT_PRECISION};
use super::number::{LocalNumber, Valuation};
use super::PadicError;

/// `{ell, d, modulus_coeffs, precision}`; the modulus defaults to the canonical one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub ell: u64,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_coeffs: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

impl FieldRecord {
    pub fn to_config(&self) -> Result<FieldConfig, PadicError> {
        let precision = self.precision.unwrap_or(DEFAULT_PRECISION);
        match &self.modulus_coeffs {
            Some(m) => {
                if m.len() != self.d + 1 {
                    return Err(PadicError::InvalidConfig(format!(
                        "modulus has {} coefficients, expected {}",
                        m.len(),
                        self.d + 1
                    )));
                }
                FieldConfig::with_modulus(self.ell, m.clone(), precision)
            }
            None => FieldConfig::new(self.ell, self.d, precision),
        }
    }

    pub fn from_config(cfg: &FieldConfig) -> Self {
        FieldRecord {
            ell: cfg.ell(),
            d: cfg.degree(),
            modulus_coeffs: Some(cfg.modulus().to_vec()),
            precision: Some(cfg.precision()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRecord {
    /// Integer coefficients of the numerator in the power basis, as decimal strings.
    pub num: Vec<String>,
    pub den: String,
}

/// A local number on the wire.
///
/// Input accepts a bare integer, a decimal string `"a"` or `"a/b"`, or the full record
/// `{valuation, unit_digits}` where `unit_digits[i]` lists base-`ℓ` digits (least significant
/// first) of the `i`-th unit coefficient. A `null` valuation encodes zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalNumberRecord {
    Integer(i64),
    Text(String),
    Full {
        valuation: Option<i64>,
        #[serde(default)]
        unit_digits: Vec<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precision: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exact: Option<ExactRecord>,
    },
}

fn parse_int(s: &str) -> Result<BigInt, PadicError> {
    BigInt::from_str(s.trim()).map_err(|_| PadicError::InvalidInput(format!("not an integer: {s:?}")))
}

impl LocalNumberRecord {
    pub fn from_number(x: &LocalNumber) -> Self {
        let exact = x.exact_parts().map(|(_, num, den)| ExactRecord {
            num: num.iter().map(|c| c.to_string()).collect(),
            den: den.to_string(),
        });
        LocalNumberRecord::Full {
            valuation: x.valuation().finite(),
            unit_digits: x.unit_digits(),
            precision: x.relative_precision(),
            exact,
        }
    }

    pub fn to_number(&self, field: &FieldConfig) -> Result<LocalNumber, PadicError> {
        match self {
            LocalNumberRecord::Integer(k) => Ok(LocalNumber::from_integer(field, *k)),
            LocalNumberRecord::Text(s) => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (parse_int(n)?, parse_int(d)?),
                    None => (parse_int(s)?, BigInt::one()),
                };
                let mut num = vec![BigInt::zero(); field.degree()];
                num[0] = n;
                LocalNumber::from_exact_parts(field, 0, &num, &d)
            }
            LocalNumberRecord::Full { valuation: None, .. } => Ok(LocalNumber::zero(field)),
            LocalNumberRecord::Full { valuation: Some(v), exact: Some(e), .. } => {
                let num = e.num.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>, _>>()?;
                LocalNumber::from_exact_parts(field, *v, &num, &parse_int(&e.den)?)
            }
            LocalNumberRecord::Full { valuation: Some(v), unit_digits, precision, exact: None } => {
                if unit_digits.len() > field.degree() {
                    return Err(PadicError::InvalidInput("too many unit coefficients".into()));
                }
                let ell = BigInt::from(field.ell());
                let mut unit = Vec::with_capacity(field.degree());
                for digits in unit_digits {
                    if digits.iter().any(|&dg| dg >= field.ell()) {
                        return Err(PadicError::InvalidInput("digit out of range".into()));
                    }
                    let c = digits.iter().rev().fold(BigInt::zero(), |acc, &dg| acc * &ell + dg);
                    unit.push(c);
                }
                let prec = precision.unwrap_or(field.precision());
                LocalNumber::from_approx_parts(field, *v, unit, prec)
            }
        }
    }
}

impl Serialize for LocalNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LocalNumberRecord::from_number(self).serialize(serializer)
    }
}

/// Valuation as JSON: an integer, or the string `"inf"`.
impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinity => serializer.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shorthand_forms() {
        let cfg = FieldConfig::new(5, 1, 8).unwrap();
        let a = LocalNumberRecord::Integer(7);
        assert_eq!(a.to_number(&cfg).unwrap(), LocalNumber::from_integer(&cfg, 7));
        let b = LocalNumberRecord::Text("3/10".into()).to_number(&cfg).unwrap();
        assert_eq!(b.valuation(), Valuation::Finite(-1));
    }

    #[test]
    fn exact_record_round_trips() {
        let cfg = FieldConfig::new(5, 2, 8).unwrap();
        let x = LocalNumber::from_int_coeffs(&cfg, &[BigInt::from(-3), BigInt::from(10)]).inv().unwrap();
        let rec = LocalNumberRecord::from_number(&x);
        assert_eq!(rec.to_number(&cfg).unwrap(), x);
        let approx = x.to_approx(6);
        let rec = LocalNumberRecord::from_number(&approx);
        assert_eq!(rec.to_number(&cfg).unwrap(), approx);
    }
}
