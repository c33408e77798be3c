use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::function_field::{expand_at, weak_approx, ApproxConstraint, GroundField, Place, RationalFunction, RationalFunctionRecord};
use crate::padic::{FieldConfig, LocalNumber, Residue};

use super::GlobalError;

/// Values `χ_v(ϖ_v)` of a character at unramified places: listed explicitly, or `z^{deg v}`
/// from a base value `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub explicit: BTreeMap<Place, LocalNumber>,
    pub base: Option<LocalNumber>,
}

impl CharacterData {
    pub fn from_base(z: LocalNumber) -> Self {
        CharacterData { explicit: BTreeMap::new(), base: Some(z) }
    }

    pub fn value_at(&self, v: &Place) -> Result<LocalNumber, GlobalError> {
        if let Some(x) = self.explicit.get(v) {
            return Ok(x.clone());
        }
        match &self.base {
            Some(z) => Ok(z.pow(v.degree() as i64)?),
            None => Err(GlobalError::IncompleteData(format!("no character value at {v}"))),
        }
    }

    /// `∏_{v ∈ places} χ_v(ϖ_v)^{ord_v y}`.
    fn evaluate_on(&self, k: &GroundField, field: &FieldConfig, y: &RationalFunction, skip: &BTreeMap<Place, u32>) -> Result<LocalNumber, GlobalError> {
        let mut factors = Vec::new();
        for (v, n) in y.divisor(k)?.iter() {
            if !skip.contains_key(v) {
                factors.push(self.value_at(v)?.pow(n)?);
            }
        }
        Ok(LocalNumber::product(field, factors.iter())?)
    }
}

/// A character of `𝔸^×/k^×`: unramified data off `S`, and at each `v ∈ S` a conductor
/// exponent `c_v` with `χ_v` trivial on `1 + 𝔭_v^{c_v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacter {
    pub unramified: CharacterData,
    pub conductors: BTreeMap<Place, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub y: RationalFunctionRecord,
    pub chi1: LocalNumber,
    pub chi2: LocalNumber,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    pub x: RationalFunctionRecord,
    /// The principal element `y ≈ x` at `w`, `≈ 1` on the rest of `S`.
    pub y: RationalFunctionRecord,
    pub chi1: LocalNumber,
    pub chi2: LocalNumber,
    pub ratio: LocalNumber,
    pub residue: Option<Residue>,
    /// Agreement with `χ_w(ϖ_w)^{ord_w x}` when `χ_w` is unramified with a known value.
    pub direct: Option<bool>,
    pub congruent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralReport {
    /// `χ_{1,v}(ϖ) ≡ χ_{2,v}(ϖ)` at every place the samples touch off `S`.
    pub off_s_congruent: bool,
    pub product_formula: Vec<ProductCheck>,
    pub ratios: Vec<RatioCheck>,
    pub passed: bool,
}

fn is_one(x: &LocalNumber) -> bool {
    x.agrees_with(&LocalNumber::one(x.field()))
}

/// `χ_w(x)` through a principal `y` with `y/x ∈ 1 + 𝔭_w^{c_w}` and `y ∈ 1 + 𝔭_v^{c_v}` on
/// `S \ {w}`: the product formula gives `χ_w(x) = ∏_{v ∉ S} χ_v(ϖ_v)^{−ord_v y}`.
fn principal_element(
    k: &GroundField,
    conductors: &BTreeMap<Place, u32>,
    w: &Place,
    x: &RationalFunction,
) -> Result<RationalFunction, GlobalError> {
    let mut constraints = Vec::new();
    for (v, c) in conductors {
        let level = (*c).max(1);
        let (target, prec) = if v == w {
            let xv = expand_at(k, x, v, level + 1);
            let val = xv.valuation().expect("nonzero sample");
            (xv, val + level as i64)
        } else {
            (expand_at(k, &RationalFunction::one(), v, level + 1), level as i64)
        };
        constraints.push(ApproxConstraint::new(v.clone(), target, prec));
    }
    Ok(weak_approx(k, &constraints)?)
}

/// Checks the product formula for both characters on principal `y` (places of `S` included,
/// which needs unramified values there), and that when the characters are congruent off `S`
/// the ratio `χ_{1,w}/χ_{2,w}` evaluated through principal elements is `≡ 1 mod 𝔪`.
pub fn central_char_propagate(
    k: &GroundField,
    field: &FieldConfig,
    chi1: &CentralCharacter,
    chi2: &CentralCharacter,
    w: &Place,
    y_samples: &[RationalFunction],
    x_samples: &[RationalFunction],
) -> Result<CentralReport, GlobalError> {
    if chi1.conductors != chi2.conductors {
        return Err(GlobalError::SpecMismatch("characters have different ramification data".into()));
    }
    if !chi1.conductors.contains_key(w) {
        return Err(GlobalError::SpecMismatch(format!("{w} is not in S")));
    }
    let none = BTreeMap::new();
    let mut product_formula = Vec::with_capacity(y_samples.len());
    for y in y_samples {
        if y.is_zero() {
            return Err(GlobalError::InvalidSpec("principal samples must be nonzero".into()));
        }
        let c1 = chi1.unramified.evaluate_on(k, field, y, &none)?;
        let c2 = chi2.unramified.evaluate_on(k, field, y, &none)?;
        let holds = is_one(&c1) && is_one(&c2);
        product_formula.push(ProductCheck { y: RationalFunctionRecord::from_function(y), chi1: c1, chi2: c2, holds });
    }

    let mut touched = BTreeSet::new();
    let mut ratios = Vec::with_capacity(x_samples.len());
    for x in x_samples {
        if x.is_zero() {
            return Err(GlobalError::InvalidSpec("ratio samples must be nonzero".into()));
        }
        let y = principal_element(k, &chi1.conductors, w, x)?;
        for (v, _) in y.divisor(k)?.iter() {
            if !chi1.conductors.contains_key(v) {
                touched.insert(v.clone());
            }
        }
        let c1 = chi1.unramified.evaluate_on(k, field, &y, &chi1.conductors)?.inv()?;
        let c2 = chi2.unramified.evaluate_on(k, field, &y, &chi2.conductors)?.inv()?;
        let ratio = c1.div(&c2)?;
        let residue = if ratio.is_integral() { Some(ratio.reduce()?) } else { None };
        let congruent = residue.as_ref().is_some_and(|r| r.is_one());
        let direct = if chi1.conductors[w] == 0 {
            let ord = x.valuation_at(k, w).expect("nonzero sample");
            match (chi1.unramified.value_at(w), chi2.unramified.value_at(w)) {
                (Ok(a), Ok(b)) => Some(a.pow(ord)?.agrees_with(&c1) && b.pow(ord)?.agrees_with(&c2)),
                _ => None,
            }
        } else {
            None
        };
        ratios.push(RatioCheck {
            x: RationalFunctionRecord::from_function(x),
            y: RationalFunctionRecord::from_function(&y),
            chi1: c1,
            chi2: c2,
            ratio,
            residue,
            direct,
            congruent,
        });
    }

    let mut off_s_congruent = true;
    for v in &touched {
        let d = chi1.unramified.value_at(v)?.div(&chi2.unramified.value_at(v)?)?;
        if !(d.is_integral() && d.reduce()?.is_one()) {
            off_s_congruent = false;
        }
    }
    let passed = product_formula.iter().all(|p| p.holds)
        && ratios.iter().all(|r| r.direct != Some(false))
        && (!off_s_congruent || ratios.iter().all(|r| r.congruent));
    Ok(CentralReport { off_s_congruent, product_formula, ratios, passed })
}
