use crate::function_field::AdditiveCharacter;
use crate::padic::{FieldConfig, LocalNumber, PadicError};

use super::GlobalError;

/// An exact formal sum `Σ c · ζ^k · q^{m/2}` with `ζ` a primitive `p`-th root of unity.
///
/// Terms are kept unevaluated until [`CycloValue::canonical`] folds them, in one sum per
/// slot, into coefficients of `ζ^k · √q^ε` with `1 ≤ k < p`, `ε ∈ {0, 1}`. That form is
/// reached by subtracting the `ζ^0` coefficient, using `1 + ζ + … + ζ^{p−1} = 0`.
#[derive(Clone, Debug)]
pub struct CycloValue {
    field: FieldConfig,
    p: u32,
    q: u64,
    /// `terms[ε][k]`
    terms: [Vec<Vec<LocalNumber>>; 2],
}

impl CycloValue {
    pub fn zero(field: &FieldConfig, p: u32, q: u64) -> Self {
        let slots = || vec![Vec::new(); p as usize];
        CycloValue { field: field.clone(), p, q, terms: [slots(), slots()] }
    }

    pub fn constant(c: LocalNumber, p: u32, q: u64) -> Self {
        let mut v = CycloValue::zero(&c.field().clone(), p, q);
        v.add_term(c, 0, 0).expect("exact power");
        v
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Adds `c · q^{half_exp/2} · ζ^{psi_exp}`.
    pub fn add_term(&mut self, c: LocalNumber, half_exp: i64, psi_exp: u32) -> Result<(), PadicError> {
        if c.is_zero() {
            return Ok(());
        }
        let parity = half_exp.rem_euclid(2) as usize;
        let whole = half_exp.div_euclid(2);
        let c = if whole == 0 { c } else { c.mul(&LocalNumber::from_integer(&self.field, self.q as i64).pow(whole)?)? };
        self.terms[parity][(psi_exp % self.p) as usize].push(c);
        Ok(())
    }

    /// `self + other`.
    pub fn add(&mut self, other: &CycloValue) {
        for e in 0..2 {
            for k in 0..self.p as usize {
                self.terms[e][k].extend(other.terms[e][k].iter().cloned());
            }
        }
    }

    /// `c · ζ^shift · self`.
    pub fn scaled(&self, c: &LocalNumber, shift: u32) -> Result<CycloValue, PadicError> {
        let mut out = CycloValue::zero(&self.field, self.p, self.q);
        for e in 0..2 {
            for k in 0..self.p as usize {
                let target = (k + shift as usize) % self.p as usize;
                for t in &self.terms[e][k] {
                    out.terms[e][target].push(t.mul(c)?);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> CycloValue {
        let mut out = self.clone();
        for slot in out.terms.iter_mut().flatten() {
            for t in slot.iter_mut() {
                *t = t.neg();
            }
        }
        out
    }

    /// Coefficients `c[ε][k − 1]` of `ζ^k √q^ε`, `1 ≤ k < p`.
    pub fn canonical(&self) -> Result<[Vec<LocalNumber>; 2], PadicError> {
        let mut out: [Vec<LocalNumber>; 2] = [Vec::new(), Vec::new()];
        for (e, slots) in self.terms.iter().enumerate() {
            let base: Vec<LocalNumber> = slots[0].iter().map(LocalNumber::neg).collect();
            for slot in &slots[1..] {
                out[e].push(LocalNumber::sum(&self.field, slot.iter().chain(base.iter()))?);
            }
        }
        Ok(out)
    }

    /// Whether the canonical coefficients all vanish exactly.
    pub fn is_exactly_zero(&self) -> Result<bool, PadicError> {
        let c = self.canonical()?;
        Ok(c.iter().flatten().all(|x| x.is_zero() && x.is_exact()))
    }

    /// Same canonical coefficients, which implies equal values.
    pub fn same_as(&self, other: &CycloValue) -> Result<bool, PadicError> {
        let mut diff = self.clone();
        diff.add(&other.neg());
        match diff.is_exactly_zero() {
            Ok(b) => Ok(b),
            Err(PadicError::PrecisionLoss { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Evaluates with the character's roots and a chosen `√q`.
    pub fn collapse(&self, psi: &AdditiveCharacter, sqrt_q: &LocalNumber) -> Result<LocalNumber, GlobalError> {
        if psi.ground().p() != self.p {
            return Err(GlobalError::InvalidSpec("character has the wrong characteristic".into()));
        }
        let q = LocalNumber::from_integer(&self.field, self.q as i64);
        if !sqrt_q.mul(sqrt_q)?.agrees_with(&q) {
            return Err(GlobalError::BadSquareRoot);
        }
        let canon = self.canonical()?;
        let one = LocalNumber::one(&self.field);
        let mut parts = Vec::new();
        for (e, coeffs) in canon.iter().enumerate() {
            let scale = if e == 0 { &one } else { sqrt_q };
            for (i, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    parts.push(LocalNumber::product(&self.field, [c, psi.root(i as u32 + 1), scale])?);
                }
            }
        }
        Ok(LocalNumber::sum(&self.field, parts.iter())?)
    }
}
