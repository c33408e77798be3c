//! JSON shapes for global specs, mirabolic points and central characters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::function_field::{
    expand_at, GroundField, LocalElementRecord, Place, PlaceRecord, RationalFunctionRecord,
};
use crate::padic::{FieldConfig, LocalNumberRecord};
use crate::satake::SatakeParam;

use super::central::{CentralCharacter, CharacterData};
use super::datum::{GlobalWhittakerSpec, KirillovEntry, KirillovTable, LocalWhittakerDatum};
use super::point::MirabolicPoint;
use super::GlobalError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KirillovEntryRecord {
    pub j: i64,
    pub m: u32,
    /// Coefficients of the unit representative in the local variable, constant first.
    #[serde(default = "one")]
    pub rep: Vec<u32>,
    pub value: LocalNumberRecord,
}

fn one() -> Vec<u32> {
    vec![1]
}

/// `{"unramified": {"mu": [..]}}` or `{"tabulated": {"entries": [..]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatumRecord {
    Unramified { mu: Vec<LocalNumberRecord> },
    Tabulated { entries: Vec<KirillovEntryRecord> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceDatumRecord {
    pub place: PlaceRecord,
    pub datum: DatumRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRuleRecord {
    pub degree: usize,
    pub mu: Vec<LocalNumberRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceValueRecord {
    pub place: PlaceRecord,
    pub value: LocalNumberRecord,
}

/// `{places, default_rule, S, w, central_chars}`.
///
/// `S` must list exactly the tabulated places; `central_chars` gives `ω_v(ϖ_v)` at tabulated
/// places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalSpecRecord {
    #[serde(default)]
    pub places: Vec<PlaceDatumRecord>,
    #[serde(default)]
    pub default_rule: Vec<DegreeRuleRecord>,
    #[serde(rename = "S", default)]
    pub s: Vec<PlaceRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<PlaceRecord>,
    #[serde(default)]
    pub central_chars: Vec<PlaceValueRecord>,
}

fn param(k: &GroundField, field: &FieldConfig, degree: usize, mu: &[LocalNumberRecord]) -> Result<SatakeParam, GlobalError> {
    let mu = mu.iter().map(|m| m.to_number(field)).collect::<Result<Vec<_>, _>>()?;
    Ok(SatakeParam::new((k.q() as u64).pow(degree as u32), mu)?)
}

impl GlobalSpecRecord {
    pub fn to_spec(&self, k: &GroundField, field: &FieldConfig) -> Result<GlobalWhittakerSpec, GlobalError> {
        let mut central = BTreeMap::new();
        for c in &self.central_chars {
            central.insert(c.place.to_place(k)?, c.value.to_number(field)?);
        }
        let mut explicit = BTreeMap::new();
        for pd in &self.places {
            let v = pd.place.to_place(k)?;
            let d = match &pd.datum {
                DatumRecord::Unramified { mu } => LocalWhittakerDatum::Unramified(param(k, field, v.degree(), mu)?),
                DatumRecord::Tabulated { entries } => {
                    let entries = entries
                        .iter()
                        .map(|e| {
                            Ok(KirillovEntry {
                                j: e.j,
                                m: e.m,
                                rep: crate::function_field::Poly::from_coeffs(e.rep.clone()),
                                value: e.value.to_number(field)?,
                            })
                        })
                        .collect::<Result<Vec<_>, GlobalError>>()?;
                    let table = KirillovTable::new(k, v.clone(), entries)?;
                    LocalWhittakerDatum::Tabulated { table, central: central.remove(&v) }
                }
            };
            if explicit.insert(v.clone(), d).is_some() {
                return Err(GlobalError::InvalidSpec(format!("place {v} listed twice")));
            }
        }
        if let Some(v) = central.keys().next() {
            return Err(GlobalError::InvalidSpec(format!("central character given at {v}, which is not tabulated")));
        }
        let mut s = self.s.iter().map(|p| p.to_place(k)).collect::<Result<Vec<_>, _>>()?;
        s.sort();
        s.dedup();
        let tabulated: Vec<Place> = explicit.iter().filter(|(_, d)| d.is_tabulated()).map(|(v, _)| v.clone()).collect();
        if s != tabulated {
            return Err(GlobalError::InvalidSpec("S must list exactly the tabulated places".into()));
        }
        let mut rule = BTreeMap::new();
        for r in &self.default_rule {
            if rule.insert(r.degree, param(k, field, r.degree, &r.mu)?).is_some() {
                return Err(GlobalError::InvalidSpec(format!("degree {} listed twice", r.degree)));
            }
        }
        let w = self.w.as_ref().map(|p| p.to_place(k)).transpose()?;
        GlobalWhittakerSpec::new(k, field, explicit, rule, w)
    }

    pub fn from_spec(spec: &GlobalWhittakerSpec) -> Self {
        let mu = |s: &SatakeParam| s.mu().iter().map(LocalNumberRecord::from_number).collect::<Vec<_>>();
        let mut places = Vec::new();
        let mut central_chars = Vec::new();
        for (v, d) in spec.explicit() {
            let datum = match d {
                LocalWhittakerDatum::Unramified(s) => DatumRecord::Unramified { mu: mu(s) },
                LocalWhittakerDatum::Tabulated { table, central } => {
                    if let Some(c) = central {
                        central_chars.push(PlaceValueRecord { place: PlaceRecord::from_place(v), value: LocalNumberRecord::from_number(c) });
                    }
                    DatumRecord::Tabulated {
                        entries: table
                            .entries()
                            .iter()
                            .map(|e| KirillovEntryRecord {
                                j: e.j,
                                m: e.m,
                                rep: e.rep.coeffs().to_vec(),
                                value: LocalNumberRecord::from_number(&e.value),
                            })
                            .collect(),
                    }
                }
            };
            places.push(PlaceDatumRecord { place: PlaceRecord::from_place(v), datum });
        }
        GlobalSpecRecord {
            places,
            default_rule: spec.default_rule().iter().map(|(e, s)| DegreeRuleRecord { degree: *e, mu: mu(s) }).collect(),
            s: spec.s_places().iter().map(PlaceRecord::from_place).collect(),
            w: spec.distinguished().map(PlaceRecord::from_place),
            central_chars,
        }
    }
}

/// A rational function expanded at the point's place, or an explicit local element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalValueRecord {
    Local(LocalElementRecord),
    Rational(RationalFunctionRecord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPointRecord {
    pub place: PlaceRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<LocalValueRecord>,
    #[serde(default)]
    pub a: [i64; 2],
}

/// `{"local": [{place, x, a}], "central": [[place, c]]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirabolicPointRecord {
    #[serde(default)]
    pub local: Vec<LocalPointRecord>,
    #[serde(default)]
    pub central: Vec<(PlaceRecord, i64)>,
}

impl MirabolicPointRecord {
    /// Rational `x` entries are expanded to `precision` digits.
    pub fn to_point(&self, k: &GroundField, precision: u32) -> Result<MirabolicPoint, GlobalError> {
        let mut g = MirabolicPoint::identity();
        for lp in &self.local {
            let v = lp.place.to_place(k)?;
            if g.local_at(&v).is_some() {
                return Err(GlobalError::InvalidSpec(format!("place {v} listed twice")));
            }
            let x = match &lp.x {
                None => crate::function_field::LocalElement::zero(v.clone()),
                Some(LocalValueRecord::Rational(r)) => expand_at(k, &r.to_function(k)?, &v, precision),
                Some(LocalValueRecord::Local(l)) => {
                    let x = l.to_element(k)?;
                    if x.place() != &v {
                        return Err(GlobalError::InvalidSpec(format!("x is not an element of the completion at {v}")));
                    }
                    x
                }
            };
            g.set_local(x, lp.a[0], lp.a[1]);
        }
        for (p, c) in &self.central {
            let v = p.to_place(k)?;
            if g.central_at(&v) != 0 {
                return Err(GlobalError::InvalidSpec(format!("central exponent at {v} listed twice")));
            }
            g.set_central(v, *c);
        }
        Ok(g)
    }

    pub fn from_point(k: &GroundField, g: &MirabolicPoint) -> Self {
        MirabolicPointRecord {
            local: g
                .local()
                .iter()
                .map(|(v, lp)| LocalPointRecord {
                    place: PlaceRecord::from_place(v),
                    x: (!lp.x.is_exact_zero()).then(|| LocalValueRecord::Local(LocalElementRecord::from_element(k, &lp.x))),
                    a: [lp.a1, lp.a2],
                })
                .collect(),
            central: g.central().iter().map(|(v, c)| (PlaceRecord::from_place(v), *c)).collect(),
        }
    }
}

/// `{"values": [{place, value}], "base": z, "conductors": [[place, c]]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    #[serde(default)]
    pub values: Vec<PlaceValueRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<LocalNumberRecord>,
    #[serde(default)]
    pub conductors: Vec<(PlaceRecord, u32)>,
}

impl CharacterRecord {
    pub fn to_character(&self, k: &GroundField, field: &FieldConfig) -> Result<CentralCharacter, GlobalError> {
        let mut explicit = BTreeMap::new();
        for pv in &self.values {
            explicit.insert(pv.place.to_place(k)?, pv.value.to_number(field)?);
        }
        let base = self.base.as_ref().map(|b| b.to_number(field)).transpose()?;
        let mut conductors = BTreeMap::new();
        for (p, c) in &self.conductors {
            conductors.insert(p.to_place(k)?, *c);
        }
        Ok(CentralCharacter { unramified: CharacterData { explicit, base }, conductors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let k = GroundField::new(3, 1).unwrap();
        let f = FieldConfig::new(7, 1, 12).unwrap();
        let json = r#"{
            "places": [
                {"place": {"finite": [0, 1]}, "datum": {"tabulated": {"entries": [{"j": 0, "m": 1, "rep": [1], "value": 1}]}}},
                {"place": {"finite": [1, 1]}, "datum": {"unramified": {"mu": [2, 4]}}}
            ],
            "default_rule": [{"degree": 1, "mu": [1, 1]}, {"degree": 2, "mu": [1, 1]}],
            "S": [{"finite": [0, 1]}],
            "central_chars": [{"place": {"finite": [0, 1]}, "value": 1}]
        }"#;
        let rec: GlobalSpecRecord = serde_json::from_str(json).unwrap();
        let spec = rec.to_spec(&k, &f).unwrap();
        assert_eq!(spec.s_places().len(), 1);
        let back = GlobalSpecRecord::from_spec(&spec);
        assert_eq!(back.to_spec(&k, &f).unwrap(), spec);

        let mut bad = rec.clone();
        bad.s.clear();
        assert!(bad.to_spec(&k, &f).is_err());
    }

    #[test]
    fn point_round_trip() {
        let k = GroundField::new(2, 1).unwrap();
        let json = r#"{"local": [{"place": {"infinity": true}, "x": {"num": [1], "den": [0, 1]}, "a": [1, 0]}],
                       "central": [[{"finite": [0, 1]}, -1]]}"#;
        let rec: MirabolicPointRecord = serde_json::from_str(json).unwrap();
        let g = rec.to_point(&k, 6).unwrap();
        assert_eq!(g.exponents_at(&Place::Infinity), (1, 0));
        let back = MirabolicPointRecord::from_point(&k, &g);
        assert_eq!(back.to_point(&k, 6).unwrap(), g);
    }
}
