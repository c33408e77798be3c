use std::collections::BTreeSet;

use serde::Serialize;

use crate::function_field::{Place, RationalFunction};
use crate::padic::{LocalNumber, Residue, ValuationBound};
use crate::satake::{char_poly, congruent, SatakeParam};

use super::datum::{GlobalWhittakerSpec, LocalWhittakerDatum};
use super::expand::{mirabolic_expand, whittaker_term, GlobalContext};
use super::point::MirabolicPoint;
use super::record::MirabolicPointRecord;
use super::GlobalError;

/// Certified lower information on `ord_ℓ(x − y)`: `exactly` when known, else `at_least`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceValuation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exactly: Option<Option<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_least: Option<i64>,
}

impl DifferenceValuation {
    fn from_bound(b: ValuationBound) -> Self {
        match b {
            ValuationBound::Exactly(v) => DifferenceValuation { exactly: Some(v.finite()), at_least: None },
            ValuationBound::AtLeast(n) => DifferenceValuation { exactly: None, at_least: Some(n) },
        }
    }

    /// `ord(x − y) ≥ 1`.
    pub fn in_maximal_ideal(&self) -> bool {
        match (self.exactly, self.at_least) {
            (Some(None), _) => true,
            (Some(Some(v)), _) => v >= 1,
            (None, Some(n)) => n >= 1,
            (None, None) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueSummary {
    pub value: LocalNumber,
    /// `null` for zero.
    pub valuation: Option<i64>,
    /// Reduction mod `𝔪`, present when integral.
    pub residue: Option<Residue>,
}

impl ValueSummary {
    fn new(value: LocalNumber) -> Result<Self, GlobalError> {
        let residue = if value.is_integral() { Some(value.reduce()?) } else { None };
        Ok(ValueSummary { valuation: value.valuation().finite(), residue, value })
    }

    pub fn is_integral(&self) -> bool {
        self.residue.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub index: usize,
    pub point: MirabolicPointRecord,
    #[serde(rename = "W1")]
    pub w1: ValueSummary,
    #[serde(rename = "W2")]
    pub w2: ValueSummary,
    pub phi1: ValueSummary,
    pub phi2: ValueSummary,
    pub w_difference: DifferenceValuation,
    pub phi_difference: DifferenceValuation,
    pub congruent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub points: Vec<PointReport>,
    pub passed: bool,
}

fn mismatch(msg: impl Into<String>) -> GlobalError {
    GlobalError::SpecMismatch(msg.into())
}

fn check_pair(s1: &SatakeParam, s2: &SatakeParam, what: &str) -> Result<(), GlobalError> {
    let (c1, c2) = (char_poly(s1)?, char_poly(s2)?);
    if !congruent(&c1, &c2)? {
        return Err(mismatch(format!("Satake data at {what} are not congruent")));
    }
    Ok(())
}

/// The shared preconditions: same fields, same `S` and `w`, identical data on `S`, integral
/// unit-determinant data everywhere and congruent Satake parameters off `S`.
pub fn check_pipeline_preconditions(spec1: &GlobalWhittakerSpec, spec2: &GlobalWhittakerSpec) -> Result<(), GlobalError> {
    if !spec1.ground().same_as(spec2.ground()) || spec1.field() != spec2.field() {
        return Err(mismatch("specs use different fields"));
    }
    if spec1.s_places() != spec2.s_places() {
        return Err(mismatch("tabulated place sets differ"));
    }
    if spec1.distinguished() != spec2.distinguished() {
        return Err(mismatch("distinguished places differ"));
    }
    for v in spec1.s_places() {
        if spec1.explicit().get(&v) != spec2.explicit().get(&v) {
            return Err(mismatch(format!("tabulated data at {v} differ")));
        }
    }
    for spec in [spec1, spec2] {
        spec.check_integral().map_err(|e| mismatch(e.to_string()))?;
    }
    let explicit: BTreeSet<&Place> = spec1.explicit().keys().chain(spec2.explicit().keys()).collect();
    for v in explicit {
        match (spec1.datum(v), spec2.datum(v)) {
            (Ok(LocalWhittakerDatum::Unramified(a)), Ok(LocalWhittakerDatum::Unramified(b))) => {
                check_pair(&a, &b, &v.to_string())?
            }
            (Ok(LocalWhittakerDatum::Tabulated { .. }), Ok(LocalWhittakerDatum::Tabulated { .. })) => {}
            _ => return Err(mismatch(format!("data at {v} are not comparable"))),
        }
    }
    let degrees: BTreeSet<usize> = spec1.default_rule().keys().chain(spec2.default_rule().keys()).copied().collect();
    for e in degrees {
        match (spec1.default_rule().get(&e), spec2.default_rule().get(&e)) {
            (Some(a), Some(b)) => check_pair(a, b, &format!("places of degree {e}"))?,
            _ => return Err(mismatch(format!("default rule for degree {e} present in only one spec"))),
        }
    }
    Ok(())
}

/// Evaluates `W_i(g)` and `φ_i(g)` on every sample and compares them mod `𝔪`.
pub fn congruence_pipeline(
    ctx: &GlobalContext,
    spec1: &GlobalWhittakerSpec,
    spec2: &GlobalWhittakerSpec,
    samples: &[MirabolicPoint],
    sqrt_q: &LocalNumber,
) -> Result<PipelineReport, GlobalError> {
    check_pipeline_preconditions(spec1, spec2)?;
    let k = ctx.ground();
    let one = RationalFunction::one();
    let mut points = Vec::with_capacity(samples.len());
    for (index, g) in samples.iter().enumerate() {
        let w1 = whittaker_term(ctx, spec1, g, &one)?.collapse(ctx.psi(), sqrt_q)?;
        let w2 = whittaker_term(ctx, spec2, g, &one)?.collapse(ctx.psi(), sqrt_q)?;
        let phi1 = mirabolic_expand(ctx, spec1, g, sqrt_q)?;
        let phi2 = mirabolic_expand(ctx, spec2, g, sqrt_q)?;
        let w_difference = DifferenceValuation::from_bound(w1.difference_valuation(&w2)?);
        let phi_difference = DifferenceValuation::from_bound(phi1.difference_valuation(&phi2)?);
        let (w1, w2, phi1, phi2) =
            (ValueSummary::new(w1)?, ValueSummary::new(w2)?, ValueSummary::new(phi1)?, ValueSummary::new(phi2)?);
        let congruent = [&w1, &w2, &phi1, &phi2].iter().all(|s| s.is_integral())
            && w_difference.in_maximal_ideal()
            && phi_difference.in_maximal_ideal();
        points.push(PointReport {
            index,
            point: MirabolicPointRecord::from_point(k, g),
            w1,
            w2,
            phi1,
            phi2,
            w_difference,
            phi_difference,
            congruent,
        });
    }
    let passed = points.iter().all(|p| p.congruent);
    Ok(PipelineReport { points, passed })
}
