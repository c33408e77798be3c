use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::function_field::{
    coset_reps, expand_at, psi_exponent_global, psi_exponent_local, quotient_index, rr_elements, Adele, AdditiveCharacter,
    Divisor, GroundField, LocalElement, Place, RationalFunction, DEFAULT_ENUMERATION_CAP, DEFAULT_LOCAL_PRECISION,
};
use crate::padic::{FieldConfig, LocalNumber};
use crate::whittaker::{whittaker_value, Weight};

use super::cyclo::CycloValue;
use super::datum::{GlobalWhittakerSpec, LocalWhittakerDatum};
use super::point::MirabolicPoint;
use super::GlobalError;

/// Shared evaluation settings: the character `ψ`, local expansion precision and the cap on
/// enumerated elements.
#[derive(Clone, Debug)]
pub struct GlobalContext {
    psi: AdditiveCharacter,
    precision: u32,
    cap: u64,
}

impl GlobalContext {
    pub fn new(ground: &GroundField, field: &FieldConfig) -> Result<Self, GlobalError> {
        Ok(GlobalContext {
            psi: AdditiveCharacter::new(ground, field)?,
            precision: DEFAULT_LOCAL_PRECISION,
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    pub fn with_precision(mut self, precision: u32) -> Self {
        self.precision = precision.max(1);
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn ground(&self) -> &GroundField {
        self.psi.ground()
    }

    pub fn field(&self) -> &FieldConfig {
        self.psi.field()
    }

    pub fn psi(&self) -> &AdditiveCharacter {
        &self.psi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    fn check_spec(&self, spec: &GlobalWhittakerSpec) -> Result<(), GlobalError> {
        if !spec.ground().same_as(self.ground()) || spec.field() != self.field() {
            return Err(GlobalError::InvalidSpec("spec and context use different fields".into()));
        }
        Ok(())
    }

    fn empty(&self) -> CycloValue {
        CycloValue::zero(self.field(), self.ground().p(), self.ground().q() as u64)
    }
}

/// `coef · q^{half_exp/2} · ζ^{psi_exp}`, with `q` the size of the constant field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTerm {
    pub coef: LocalNumber,
    pub half_exp: i64,
    pub psi_exp: u32,
}

impl LocalTerm {
    fn zero(field: &FieldConfig) -> Self {
        LocalTerm { coef: LocalNumber::zero(field), half_exp: 0, psi_exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn to_cyclo(&self, ctx: &GlobalContext) -> Result<CycloValue, GlobalError> {
        let mut v = ctx.empty();
        v.add_term(self.coef.clone(), self.half_exp, self.psi_exp)?;
        Ok(v)
    }
}

/// `W_v(ϖ^c · [[ϖ^{a_1}, x], [0, ϖ^{a_2}]])`.
pub fn local_value(
    ctx: &GlobalContext,
    d: &LocalWhittakerDatum,
    v: &Place,
    x: &LocalElement,
    a: (i64, i64),
    central: i64,
) -> Result<LocalTerm, GlobalError> {
    let y = LocalElement::uniformizer_power(v.clone(), a.0, ctx.precision);
    local_value_at(ctx, d, v, &y, x, a.1, central)
}

/// `W_v(ϖ^c · [[y, x], [0, ϖ^{a_2}]])` for `y ∈ k_v^×`.
///
/// The matrix equals `ϖ^{c+a_2} · n(x ϖ^{−a_2}) · diag(y ϖ^{−a_2}, 1)`, so the value is
/// `ω_v(ϖ)^{c+a_2} · ψ_v(x ϖ^{−a_2}) · W_v(diag(y ϖ^{−a_2}, 1))`.
pub fn local_value_at(
    ctx: &GlobalContext,
    d: &LocalWhittakerDatum,
    v: &Place,
    y: &LocalElement,
    x: &LocalElement,
    a2: i64,
    central: i64,
) -> Result<LocalTerm, GlobalError> {
    let k = ctx.ground();
    if y.place() != v || x.place() != v {
        return Err(GlobalError::InvalidSpec(format!("local data does not live at {v}")));
    }
    let Some(ord_y) = y.valuation() else {
        return Err(GlobalError::UnsupportedPoint(format!("singular matrix at {v}")));
    };
    let shift = central + a2;
    let (coef, half_exp) = match d {
        LocalWhittakerDatum::Unramified(s) => {
            let w = whittaker_value(s, &Weight::new(vec![ord_y + central, a2 + central]))?;
            (w.coef, w.q_half_exp * v.degree() as i64)
        }
        LocalWhittakerDatum::Tabulated { table, central: omega } => {
            let Some(f) = table.lookup(k, &y.shift(-a2))? else {
                return Ok(LocalTerm::zero(ctx.field()));
            };
            let coef = if shift == 0 {
                f.clone()
            } else {
                let omega = omega.as_ref().ok_or_else(|| {
                    GlobalError::UnsupportedPoint(format!("central shift at {v} needs the central character"))
                })?;
                f.mul(&omega.pow(shift)?)?
            };
            (coef, 0)
        }
    };
    if coef.is_zero() {
        return Ok(LocalTerm::zero(ctx.field()));
    }
    let psi_exp = if x.is_exact_zero() { 0 } else { psi_exponent_local(k, v, &x.shift(-a2))? };
    Ok(LocalTerm { coef, half_exp, psi_exp })
}

/// Lower bound on `ord_v γ` for the `γ`-term to be nonzero, `None` for an empty table.
fn ord_bound(spec: &GlobalWhittakerSpec, g: &MirabolicPoint, v: &Place) -> Result<Option<i64>, GlobalError> {
    let (a1, a2) = g.exponents_at(v);
    Ok(match spec.datum(v)? {
        LocalWhittakerDatum::Unramified(_) => Some(a2 - a1),
        LocalWhittakerDatum::Tabulated { table, .. } => table.min_j().map(|j| j - a1 + a2),
    })
}

/// The divisor `D` with `ord_v γ ≥ −D_v` at every place for every nonzero `γ`-term, or
/// `None` when some table is empty.
pub fn support_divisor(spec: &GlobalWhittakerSpec, g: &MirabolicPoint) -> Result<Option<Divisor>, GlobalError> {
    let mut places: BTreeSet<Place> = g.local().keys().cloned().collect();
    places.extend(spec.s_places());
    let mut d = Divisor::new();
    for v in places {
        match ord_bound(spec, g, &v)? {
            Some(b) => d.add_at(v, -b),
            None => return Ok(None),
        }
    }
    Ok(Some(d))
}

/// A finite set of `γ ∈ k^×` containing every `γ` with a nonzero term at `g`.
pub fn gamma_support(ctx: &GlobalContext, spec: &GlobalWhittakerSpec, g: &MirabolicPoint) -> Result<Vec<RationalFunction>, GlobalError> {
    ctx.check_spec(spec)?;
    match support_divisor(spec, g)? {
        Some(d) => Ok(rr_elements(ctx.ground(), &d, ctx.cap)?),
        None => Ok(Vec::new()),
    }
}

/// `W(diag(γ, 1) g) = ∏_v W_v(diag(γ, 1) g_v)`, exactly.
pub fn whittaker_term(
    ctx: &GlobalContext,
    spec: &GlobalWhittakerSpec,
    g: &MirabolicPoint,
    gamma: &RationalFunction,
) -> Result<CycloValue, GlobalError> {
    ctx.check_spec(spec)?;
    let k = ctx.ground();
    if gamma.is_zero() {
        return Ok(ctx.empty());
    }
    let mut places = g.support();
    places.extend(spec.s_places());
    places.extend(gamma.divisor(k)?.support().cloned());
    places.insert(Place::Infinity);
    let mut factors = Vec::with_capacity(places.len());
    let mut half_exp = 0;
    let mut psi_exp = 0;
    for v in &places {
        let d = spec.datum(v)?;
        let gv = expand_at(k, gamma, v, ctx.precision);
        let (a1, a2) = g.exponents_at(v);
        let y = gv.shift(a1);
        let x = match g.local_at(v) {
            Some(lp) if !lp.x.is_exact_zero() => gv.mul(k, &lp.x)?,
            _ => LocalElement::zero(v.clone()),
        };
        let term = local_value_at(ctx, &d, v, &y, &x, a2, g.central_at(v))?;
        if term.is_zero() {
            return Ok(ctx.empty());
        }
        half_exp += term.half_exp;
        psi_exp = (psi_exp + term.psi_exp) % k.p();
        factors.push(term.coef);
    }
    let coef = LocalNumber::product(ctx.field(), factors.iter())?;
    let mut out = ctx.empty();
    out.add_term(coef, half_exp, psi_exp)?;
    Ok(out)
}

/// `φ(g) = Σ_{γ ∈ k^×} W(diag(γ, 1) g)` as an exact cyclotomic sum.
pub fn mirabolic_expand_exact(ctx: &GlobalContext, spec: &GlobalWhittakerSpec, g: &MirabolicPoint) -> Result<CycloValue, GlobalError> {
    let mut acc = ctx.empty();
    for gamma in gamma_support(ctx, spec, g)? {
        acc.add(&whittaker_term(ctx, spec, g, &gamma)?);
    }
    Ok(acc)
}

/// `φ(g)` evaluated with the given `√q`.
pub fn mirabolic_expand(
    ctx: &GlobalContext,
    spec: &GlobalWhittakerSpec,
    g: &MirabolicPoint,
    sqrt_q: &LocalNumber,
) -> Result<LocalNumber, GlobalError> {
    mirabolic_expand_exact(ctx, spec, g)?.collapse(ctx.psi(), sqrt_q)
}

/// A level `U = ∏ 𝔭_v^{m_v}` under which `φ` is right-invariant near `g`: `γU ⊆ ker ψ` for
/// every `γ` in the support divisor's Riemann–Roch space.
pub fn invariance_divisor(spec: &GlobalWhittakerSpec, g: &MirabolicPoint) -> Result<Divisor, GlobalError> {
    let mut u = Divisor::new();
    let Some(d) = support_divisor(spec, g)? else {
        return Ok(u);
    };
    for (v, n) in d.iter() {
        let m = if v.is_infinite() { n + 2 } else { n };
        if m > 0 {
            u.set(v.clone(), m);
        }
    }
    if !d.iter().any(|(v, _)| v.is_infinite()) {
        u.set(Place::Infinity, 2);
    }
    Ok(u)
}

/// Left `U`-invariant function on mirabolic points with exact values.
pub type PointFunction<'a> = dyn Fn(&MirabolicPoint) -> Result<CycloValue, GlobalError> + 'a;

/// `Φ(γ, g) = ∫_{𝔸/k} ψ^{−1}(γu) φ(n(u) g) du` as an average over `𝔸/(k + U)`, exactly.
///
/// When `γU ⊄ ker ψ` the integrand is a nontrivial character of the compact group `U`
/// times a `U`-invariant function, so the coefficient is zero.
pub fn fourier_coefficient_exact(
    ctx: &GlobalContext,
    phi: &PointFunction<'_>,
    gamma: &RationalFunction,
    g: &MirabolicPoint,
    u: &Divisor,
) -> Result<CycloValue, GlobalError> {
    let k = ctx.ground();
    let index = quotient_index(k, u)?;
    let kernel = crate::function_field::psi_kernel_divisor(u);
    if gamma.is_zero() {
        return Err(GlobalError::InvalidSpec("the constant term is not computed".into()));
    }
    if !crate::function_field::in_rr_space(k, gamma, &kernel)? {
        return Ok(ctx.empty());
    }
    let reps = coset_reps(k, u, ctx.cap)?;
    let inv_index = LocalNumber::from_bigint(ctx.field(), BigInt::from(index)).inv()?;
    let mut acc = ctx.empty();
    for r in &reps {
        let mut h = g.clone();
        let mut gr = Adele::new();
        for (v, rv) in r.iter() {
            h = h.translated(k, rv)?;
            gr.set(expand_at(k, gamma, v, ctx.precision).mul(k, rv)?);
        }
        let e = psi_exponent_global(k, &gr)?;
        let inv_e = (k.p() - e) % k.p();
        acc.add(&phi(&h)?.scaled(&inv_index, inv_e)?);
    }
    Ok(acc)
}

/// [`fourier_coefficient_exact`] evaluated with the given `√q`.
pub fn fourier_coefficient(
    ctx: &GlobalContext,
    phi: &PointFunction<'_>,
    gamma: &RationalFunction,
    g: &MirabolicPoint,
    u: &Divisor,
    sqrt_q: &LocalNumber,
) -> Result<LocalNumber, GlobalError> {
    fourier_coefficient_exact(ctx, phi, gamma, g, u)?.collapse(ctx.psi(), sqrt_q)
}
