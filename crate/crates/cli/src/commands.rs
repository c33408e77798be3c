use ellcong::function_field::{
    coset_reps, psi_exponent_global, quotient_index, rr_dimension, rr_space, Adele, AdditiveCharacter, AdeleRecord,
    DivisorRecord, GroundField, Place, RationalFunction, RationalFunctionRecord,
};
use ellcong::global::{
    congruence_pipeline, default_samples, gamma_support, mirabolic_expand, whittaker_term, GlobalContext, GlobalSpecRecord,
    MirabolicPoint, MirabolicPointRecord,
};
use ellcong::padic::{sqrt_of_integer, FieldConfig, LocalNumber, LocalNumberRecord, PadicError};
use ellcong::satake::{char_poly, congruent, is_integral, match_residues, reduce_char_poly, CharPolyRecord, SatakeRecord};
use ellcong::whittaker::{check_congruence, collapse, whittaker_value, Weight};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, Status};
use crate::selftest;

pub const SCHEMA_VERSION: u32 = 1;

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Config {
    pub ell: u64,
    pub d: usize,
    pub precision: u32,
    pub p: u64,
    pub f: u32,
    pub bound: u32,
    pub cap: u64,
    pub seed: u64,
    pub local_precision: u32,
    pub samples: usize,
    pub require_integral: bool,
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.ell == self.p {
            return Err(CliError::input("ell must differ from the characteristic p"));
        }
        if self.cap == 0 {
            return Err(CliError::input("--cap must be positive"));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<FieldConfig, CliError> {
        Ok(FieldConfig::new(self.ell, self.d, self.precision)?)
    }

    pub fn ground(&self) -> Result<GroundField, CliError> {
        Ok(GroundField::new(self.p, self.f)?)
    }

    fn context(&self) -> Result<(GroundField, FieldConfig, GlobalContext), CliError> {
        let k = self.ground()?;
        let field = self.field()?;
        let ctx = GlobalContext::new(&k, &field)?.with_precision(self.local_precision).with_cap(self.cap);
        Ok((k, field, ctx))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ell": self.ell, "d": self.d, "precision": self.precision, "p": self.p, "f": self.f,
            "bound": self.bound, "cap": self.cap, "local_precision": self.local_precision,
        })
    }
}

/// A report and whether it records a mathematical violation.
pub struct Outcome {
    pub result: Value,
    pub status: Status,
}

impl Outcome {
    fn new(result: Value, ok: bool) -> Self {
        Outcome { result, status: if ok { Status::Pass } else { Status::Violation } }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(input: Option<&str>) -> Result<T, CliError> {
    let text = input.ok_or_else(|| CliError::input("this command needs --input"))?;
    let v: Value = serde_json::from_str(text)?;
    match v.get("schema_version").and_then(Value::as_u64) {
        Some(n) if n == SCHEMA_VERSION as u64 => {}
        Some(n) => return Err(CliError::input(format!("unsupported schema_version {n}"))),
        None => return Err(CliError::input("input lacks schema_version")),
    }
    Ok(serde_json::from_value(v)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn num(x: &LocalNumber) -> Value {
    to_value(&LocalNumberRecord::from_number(x))
}

fn sqrt_q(field: &FieldConfig, q: u64, given: &Option<LocalNumberRecord>) -> Result<LocalNumber, CliError> {
    match given {
        Some(r) => Ok(r.to_number(field)?),
        None => sqrt_of_integer(field, q as i64).map_err(|e| match e {
            PadicError::NoSimpleRoot => {
                CliError::input(format!("{q} has no square root in this field; pass sqrt_q or choose another --d"))
            }
            other => other.into(),
        }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SatakeInput {
    #[allow(dead_code)]
    schema_version: u32,
    params: Vec<SatakeRecord>,
}

pub fn satake(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: SatakeInput = parse(input)?;
    if inp.params.is_empty() || inp.params.len() > 2 {
        return Err(CliError::input("give one or two Satake parameters"));
    }
    let field = cfg.field()?;
    let params = inp.params.iter().map(|r| r.to_param(&field)).collect::<Result<Vec<_>, _>>()?;
    let mut ok = true;
    let mut items = Vec::new();
    let mut polys = Vec::new();
    for s in &params {
        let cp = char_poly(s)?;
        let integral = is_integral(&cp);
        if cfg.require_integral && !integral {
            ok = false;
        }
        let reduction = if integral { Some(reduce_char_poly(&cp)?.to_string()) } else { None };
        items.push(json!({
            "char_poly": to_value(&CharPolyRecord::from_poly(&cp)),
            "integral": integral,
            "reduction": reduction,
        }));
        polys.push(cp);
    }
    let mut result = json!({ "params": items });
    if let [p1, p2] = polys.as_slice() {
        let verdict = if is_integral(p1) && is_integral(p2) { Some(congruent(p1, p2)?) } else { None };
        result["congruent"] = json!(verdict);
        if verdict == Some(true) {
            result["matching"] = json!(match_residues(&params[0], &params[1]).ok());
        }
        ok &= verdict == Some(true);
    }
    Ok(Outcome::new(result, ok))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WhittakerInput {
    #[allow(dead_code)]
    schema_version: u32,
    param: SatakeRecord,
    weights: Vec<Weight>,
    #[serde(default)]
    sqrt_q: Option<LocalNumberRecord>,
}

pub fn whittaker(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: WhittakerInput = parse(input)?;
    let field = cfg.field()?;
    let s = inp.param.to_param(&field)?;
    let root = match &inp.sqrt_q {
        Some(r) => Some(r.to_number(&field)?),
        None => None,
    };
    let mut values = Vec::new();
    for a in &inp.weights {
        let w = whittaker_value(&s, a)?;
        let mut item = json!({ "weight": to_value(a), "coef": num(&w.coef), "q_half_exp": w.q_half_exp, "display": w.to_string() });
        if let Some(r) = &root {
            item["value"] = num(&collapse(&w, r)?);
        }
        values.push(item);
    }
    Ok(Outcome::new(json!({ "q": s.q(), "values": values }), true))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CongruenceInput {
    #[allow(dead_code)]
    schema_version: u32,
    param1: SatakeRecord,
    param2: SatakeRecord,
}

pub fn congruence(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: CongruenceInput = parse(input)?;
    let field = cfg.field()?;
    let s1 = inp.param1.to_param(&field)?;
    let s2 = inp.param2.to_param(&field)?;
    let report = check_congruence(&s1, &s2, cfg.bound)?;
    let passed = report.passed();
    let mut result = to_value(&report);
    result["passed"] = json!(passed);
    Ok(Outcome::new(result, passed))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RrInput {
    #[allow(dead_code)]
    schema_version: u32,
    divisor: DivisorRecord,
}

pub fn rr(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: RrInput = parse(input)?;
    let k = cfg.ground()?;
    let d = inp.divisor.to_divisor(&k)?;
    let basis: Vec<Value> = rr_space(&k, &d).iter().map(|f| to_value(&RationalFunctionRecord::from_function(f))).collect();
    Ok(Outcome::new(
        json!({ "divisor": d.to_string(), "degree": d.degree(), "dimension": rr_dimension(&d), "basis": basis }),
        true,
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiInput {
    #[allow(dead_code)]
    schema_version: u32,
    #[serde(default)]
    principal: Vec<RationalFunctionRecord>,
    #[serde(default)]
    adeles: Vec<AdeleRecord>,
}

pub fn psi(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: PsiInput = parse(input)?;
    let k = cfg.ground()?;
    let character = AdditiveCharacter::new(&k, &cfg.field()?)?;
    let mut out = Vec::new();
    let mut all_trivial = true;
    for r in &inp.principal {
        let g = r.to_function(&k)?;
        let mut places = g.finite_poles(&k);
        places.push(Place::Infinity);
        let a = Adele::diagonal(&k, &g, &places, cfg.local_precision);
        let e = psi_exponent_global(&k, &a)?;
        all_trivial &= e == 0;
        out.push(json!({ "principal": to_value(r), "exponent": e, "value": num(character.root(e)) }));
    }
    for r in &inp.adeles {
        let a = r.to_adele(&k)?;
        let e = psi_exponent_global(&k, &a)?;
        out.push(json!({ "adele": to_value(r), "exponent": e, "value": num(character.root(e)) }));
    }
    Ok(Outcome::new(json!({ "values": out, "principal_trivial": all_trivial }), all_trivial))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexInput {
    #[allow(dead_code)]
    schema_version: u32,
    level: DivisorRecord,
    #[serde(default)]
    list_reps: bool,
}

pub fn index(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: IndexInput = parse(input)?;
    let k = cfg.ground()?;
    let u = inp.level.to_divisor(&k)?;
    let idx = quotient_index(&k, &u)?;
    let exponent = (u.degree() - 1).max(0) as u64 * k.f() as u64;
    let mut result = json!({
        "level": u.to_string(),
        "index": idx.to_string(),
        "factorization": format!("{}^{}", k.p(), exponent),
    });
    if inp.list_reps {
        let reps = coset_reps(&k, &u, cfg.cap)?;
        result["reps"] = json!(reps.iter().map(|a| to_value(&AdeleRecord::from_adele(&k, a))).collect::<Vec<_>>());
    }
    Ok(Outcome::new(result, true))
}

fn points(k: &GroundField, cfg: &Config, given: &Option<Vec<MirabolicPointRecord>>) -> Result<Vec<MirabolicPoint>, CliError> {
    match given {
        Some(list) => Ok(list.iter().map(|r| r.to_point(k, cfg.local_precision)).collect::<Result<_, _>>()?),
        None => Ok(default_samples(k, cfg.samples, cfg.local_precision)),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpandInput {
    #[allow(dead_code)]
    schema_version: u32,
    spec: GlobalSpecRecord,
    #[serde(default)]
    points: Option<Vec<MirabolicPointRecord>>,
    #[serde(default)]
    sqrt_q: Option<LocalNumberRecord>,
}

pub fn expand(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: ExpandInput = parse(input)?;
    let (k, field, ctx) = cfg.context()?;
    let spec = inp.spec.to_spec(&k, &field)?;
    let root = sqrt_q(&field, k.q() as u64, &inp.sqrt_q)?;
    let mut out = Vec::new();
    for g in points(&k, cfg, &inp.points)? {
        let support = gamma_support(&ctx, &spec, &g)?;
        let w = whittaker_term(&ctx, &spec, &g, &RationalFunction::one())?.collapse(ctx.psi(), &root)?;
        let phi = mirabolic_expand(&ctx, &spec, &g, &root)?;
        out.push(json!({
            "point": to_value(&MirabolicPointRecord::from_point(&k, &g)),
            "support_size": support.len(),
            "W": num(&w),
            "phi": num(&phi),
        }));
    }
    Ok(Outcome::new(json!({ "sqrt_q": num(&root), "points": out }), true))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PipelineInput {
    #[allow(dead_code)]
    schema_version: u32,
    spec1: GlobalSpecRecord,
    spec2: GlobalSpecRecord,
    #[serde(default)]
    points: Option<Vec<MirabolicPointRecord>>,
    #[serde(default)]
    sqrt_q: Option<LocalNumberRecord>,
}

pub fn pipeline(cfg: &Config, input: Option<&str>) -> Result<Outcome, CliError> {
    let inp: PipelineInput = parse(input)?;
    let (k, field, ctx) = cfg.context()?;
    let spec1 = inp.spec1.to_spec(&k, &field)?;
    let spec2 = inp.spec2.to_spec(&k, &field)?;
    let root = sqrt_q(&field, k.q() as u64, &inp.sqrt_q)?;
    let samples = points(&k, cfg, &inp.points)?;
    let report = congruence_pipeline(&ctx, &spec1, &spec2, &samples, &root)?;
    Ok(Outcome::new(to_value(&report), report.passed))
}

pub fn run_selftest(cfg: &Config) -> Result<Outcome, CliError> {
    let checks = selftest::run(cfg)?;
    let ok = checks.iter().all(|c| c.failed == 0);
    Ok(Outcome::new(json!({ "checks": to_value(&checks) }), ok))
}
