use std::collections::BTreeMap;

use crate::function_field::{GroundField, LocalElement, Place, Poly};
use crate::padic::{FieldConfig, LocalNumber};
use crate::satake::{char_poly, is_integral, SatakeParam};

use super::GlobalError;

/// One cell `ϖ^j · rep · (1 + 𝔭^m)` of a Kirillov table; `m = 0` means all units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirillovEntry {
    pub j: i64,
    pub m: u32,
    /// Unit representative as a polynomial in the local variable, reduced mod `π^m`.
    pub rep: Poly,
    pub value: LocalNumber,
}

/// A finitely supported function on `k_v^×` constant on the listed cells and zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirillovTable {
    place: Place,
    entries: Vec<KirillovEntry>,
}

fn pi_pow(k: &GroundField, v: &Place, n: u32) -> Poly {
    v.local_uniformizer().pow(k, n as u64)
}

fn reduce_rep(k: &GroundField, v: &Place, rep: &Poly, m: u32) -> Poly {
    if m == 0 {
        return Poly::one();
    }
    rep.rem(k, &pi_pow(k, v, m))
}

impl KirillovTable {
    /// Reduces representatives and rejects non-units and overlapping cells.
    pub fn new(k: &GroundField, place: Place, entries: Vec<KirillovEntry>) -> Result<Self, GlobalError> {
        let pi = pi_pow(k, &place, 1);
        let mut normalized: Vec<KirillovEntry> = Vec::with_capacity(entries.len());
        for mut e in entries {
            if e.m > 0 && e.rep.rem(k, &pi).is_zero() {
                return Err(GlobalError::InvalidSpec(format!("representative {} is not a unit at {place}", e.rep)));
            }
            e.rep = reduce_rep(k, &place, &e.rep, e.m);
            for other in normalized.iter().filter(|o| o.j == e.j) {
                let level = other.m.min(e.m);
                if reduce_rep(k, &place, &other.rep, level) == reduce_rep(k, &place, &e.rep, level) {
                    return Err(GlobalError::InvalidSpec(format!("overlapping cells at {place}, j = {}", e.j)));
                }
            }
            normalized.push(e);
        }
        if let Some(f) = normalized.first().map(|e| e.value.field().clone()) {
            if normalized.iter().any(|e| e.value.field() != &f) {
                return Err(GlobalError::InvalidSpec("table values use different fields".into()));
            }
        }
        normalized.sort_by(|a, b| (a.j, a.m, &a.rep).cmp(&(b.j, b.m, &b.rep)));
        Ok(KirillovTable { place, entries: normalized })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn entries(&self) -> &[KirillovEntry] {
        &self.entries
    }

    /// All values have valuation `≥ 0`.
    pub fn is_integral_valued(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_integral())
    }

    pub fn min_j(&self) -> Option<i64> {
        self.entries.iter().map(|e| e.j).min()
    }

    /// Value at `y ∈ k_v^×`; zero off the listed cells.
    pub fn lookup(&self, k: &GroundField, y: &LocalElement) -> Result<Option<&LocalNumber>, GlobalError> {
        let Some(j) = y.valuation() else {
            return Err(GlobalError::UnsupportedPoint(format!("table at {} queried at zero", self.place)));
        };
        let unit = y.unit().expect("nonzero element");
        let avail = y.relative_precision().unwrap_or(0);
        for e in self.entries.iter().filter(|e| e.j == j) {
            if e.m > avail {
                return Err(crate::function_field::FunctionFieldError::InsufficientPrecision {
                    place: self.place.to_string(),
                    needed: j + e.m as i64,
                    available: j + avail as i64,
                }
                .into());
            }
            if reduce_rep(k, &self.place, unit, e.m) == e.rep {
                return Ok(Some(&e.value));
            }
        }
        Ok(None)
    }

    /// Value on the identity cell.
    pub fn value_at_one(&self, k: &GroundField) -> Result<Option<&LocalNumber>, GlobalError> {
        let prec = self.entries.iter().map(|e| e.m).max().unwrap_or(1).max(1);
        self.lookup(k, &LocalElement::uniformizer_power(self.place.clone(), 0, prec))
    }
}

/// Local data at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalWhittakerDatum {
    /// Spherical data with `n = 2` and `q_v = q^{deg v}`.
    Unramified(SatakeParam),
    /// Kirillov values on `P_v`, with the central character's value at `ϖ_v` when known.
    Tabulated { table: KirillovTable, central: Option<LocalNumber> },
}

impl LocalWhittakerDatum {
    pub fn is_tabulated(&self) -> bool {
        matches!(self, LocalWhittakerDatum::Tabulated { .. })
    }

    /// Value of the central character at `ϖ_v`.
    pub fn central_value(&self) -> Result<Option<LocalNumber>, GlobalError> {
        Ok(match self {
            LocalWhittakerDatum::Unramified(s) => Some(s.mu()[0].mul(&s.mu()[1])?),
            LocalWhittakerDatum::Tabulated { central, .. } => central.clone(),
        })
    }
}

/// A pure-tensor Whittaker function for `GL_2` over `F_q(t)`.
///
/// Places not listed explicitly are unramified with the Satake parameter assigned to their
/// degree by the default rule. The tabulated places form `S`; at each of them other than
/// the distinguished place `w` the table takes the value 1 on the identity cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalWhittakerSpec {
    ground: GroundField,
    field: FieldConfig,
    explicit: BTreeMap<Place, LocalWhittakerDatum>,
    default_rule: BTreeMap<usize, SatakeParam>,
    w: Option<Place>,
}

impl GlobalWhittakerSpec {
    pub fn new(
        ground: &GroundField,
        field: &FieldConfig,
        explicit: BTreeMap<Place, LocalWhittakerDatum>,
        default_rule: BTreeMap<usize, SatakeParam>,
        w: Option<Place>,
    ) -> Result<Self, GlobalError> {
        let check_param = |s: &SatakeParam, degree: usize, what: &str| -> Result<(), GlobalError> {
            if s.n() != 2 {
                return Err(GlobalError::InvalidSpec(format!("{what}: Satake parameter must have n = 2")));
            }
            if s.field() != field {
                return Err(GlobalError::InvalidSpec(format!("{what}: Satake parameter uses another field")));
            }
            let qv = (ground.q() as u64).pow(degree as u32);
            if s.q() != qv {
                return Err(GlobalError::InvalidSpec(format!("{what}: q = {} but the place has norm {qv}", s.q())));
            }
            Ok(())
        };
        for (v, d) in &explicit {
            match d {
                LocalWhittakerDatum::Unramified(s) => check_param(s, v.degree(), &v.to_string())?,
                LocalWhittakerDatum::Tabulated { table, central } => {
                    if table.place() != v {
                        return Err(GlobalError::InvalidSpec(format!("table for {} listed at {v}", table.place())));
                    }
                    if table.entries().iter().any(|e| e.value.field() != field)
                        || central.as_ref().is_some_and(|c| c.field() != field)
                    {
                        return Err(GlobalError::InvalidSpec(format!("{v}: values use another field")));
                    }
                    if w.as_ref() != Some(v) {
                        let one = table.value_at_one(ground)?;
                        if one != Some(&LocalNumber::one(field)) {
                            return Err(GlobalError::InvalidSpec(format!("table at {v} must take the value 1 at 1")));
                        }
                    }
                }
            }
        }
        for (e, s) in &default_rule {
            check_param(s, *e, &format!("default rule for degree {e}"))?;
        }
        if let Some(wp) = &w {
            if !explicit.get(wp).is_some_and(|d| d.is_tabulated()) {
                return Err(GlobalError::InvalidSpec(format!("distinguished place {wp} is not tabulated")));
            }
        }
        Ok(GlobalWhittakerSpec { ground: ground.clone(), field: field.clone(), explicit, default_rule, w })
    }

    /// Every place unramified, given by the degree rule.
    pub fn unramified(ground: &GroundField, field: &FieldConfig, rule: BTreeMap<usize, SatakeParam>) -> Result<Self, GlobalError> {
        Self::new(ground, field, BTreeMap::new(), rule, None)
    }

    pub fn ground(&self) -> &GroundField {
        &self.ground
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn explicit(&self) -> &BTreeMap<Place, LocalWhittakerDatum> {
        &self.explicit
    }

    pub fn default_rule(&self) -> &BTreeMap<usize, SatakeParam> {
        &self.default_rule
    }

    pub fn distinguished(&self) -> Option<&Place> {
        self.w.as_ref()
    }

    /// The tabulated places.
    pub fn s_places(&self) -> Vec<Place> {
        self.explicit.iter().filter(|(_, d)| d.is_tabulated()).map(|(v, _)| v.clone()).collect()
    }

    pub fn datum(&self, v: &Place) -> Result<LocalWhittakerDatum, GlobalError> {
        if let Some(d) = self.explicit.get(v) {
            return Ok(d.clone());
        }
        self.default_rule
            .get(&v.degree())
            .map(|s| LocalWhittakerDatum::Unramified(s.clone()))
            .ok_or_else(|| GlobalError::IncompleteData(format!("no datum for {v} (degree {})", v.degree())))
    }

    /// All unramified data integral with unit determinant, and all tables integral valued
    /// with unit central values.
    pub fn check_integral(&self) -> Result<(), GlobalError> {
        let unit_param = |s: &SatakeParam| -> Result<bool, GlobalError> {
            let cp = char_poly(s)?;
            Ok(is_integral(&cp) && cp.coeffs()[1].is_unit())
        };
        for (v, d) in &self.explicit {
            let ok = match d {
                LocalWhittakerDatum::Unramified(s) => unit_param(s)?,
                LocalWhittakerDatum::Tabulated { table, central } => {
                    table.is_integral_valued() && central.as_ref().is_none_or(|c| c.is_unit())
                }
            };
            if !ok {
                return Err(GlobalError::NotIntegral(v.to_string()));
            }
        }
        for (e, s) in &self.default_rule {
            if !unit_param(s)? {
                return Err(GlobalError::NotIntegral(format!("default rule for degree {e}")));
            }
        }
        Ok(())
    }
}
