//! The additive character `ψ = ⊗ ψ_v` attached to the differential `dt`.
//!
//! `ψ_v(x) = ψ_0(Tr_{F_q/F_p}(res_v(x dt)))` with `ψ_0(c) = ζ^c` for a fixed primitive
//! `p`-th root of unity `ζ` in the coefficient field. At a finite place `P` of degree `e`
//! the residue is the coefficient of `t^{e−1}` in the digit of index `−1`; at infinity it is
//! `−c_1` where `x = Σ c_i s^i`. Hence `ψ_v` has conductor `O_v` at finite places and
//! `𝔭_∞²` at infinity.

use crate::padic::{pth_roots_of_unity, FieldConfig, LocalNumber};

use super::ground::GroundField;
use super::local::{Adele, LocalElement};
use super::place::Place;
use super::FunctionFieldError;

/// `Tr(res_v(x dt))` as an integer mod `p`.
pub fn psi_exponent_local(k: &GroundField, v: &Place, x: &LocalElement) -> Result<u32, FunctionFieldError> {
    if x.place() != v {
        return Err(FunctionFieldError::PlaceMismatch);
    }
    match v {
        Place::Finite(p) => {
            if x.valuation().is_none_or(|val| val >= 0) && x.absolute_precision().is_none_or(|a| a >= 0) {
                return Ok(0);
            }
            let e = p.degree().expect("place polynomial");
            let d = x.digit(k, -1)?;
            Ok(k.trace(d.coeff(e - 1)))
        }
        Place::Infinity => {
            let c1 = x.digit(k, 1)?.coeff(0);
            Ok(k.trace(k.neg(c1)))
        }
    }
}

/// Sum of local exponents over the support.
pub fn psi_exponent_global(k: &GroundField, x: &Adele) -> Result<u32, FunctionFieldError> {
    let mut acc = 0;
    for (v, xv) in x.iter() {
        acc = (acc + psi_exponent_local(k, v, xv)?) % k.p();
    }
    Ok(acc)
}

/// `ψ` with values in `μ_p ⊂ Q_{ℓ^d}`.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    ground: GroundField,
    roots: Vec<LocalNumber>,
}

impl AdditiveCharacter {
    /// Needs `p | ℓ^d − 1`.
    pub fn new(ground: &GroundField, field: &FieldConfig) -> Result<Self, FunctionFieldError> {
        let roots = pth_roots_of_unity(field, ground.p() as u64)?;
        Ok(AdditiveCharacter { ground: ground.clone(), roots })
    }

    pub fn ground(&self) -> &GroundField {
        &self.ground
    }

    pub fn field(&self) -> &FieldConfig {
        self.roots[0].field()
    }

    /// `[1, ζ, …, ζ^{p−1}]`.
    pub fn roots(&self) -> &[LocalNumber] {
        &self.roots
    }

    /// `ζ^e`.
    pub fn root(&self, e: u32) -> &LocalNumber {
        &self.roots[(e % self.ground.p()) as usize]
    }

    pub fn psi_local(&self, v: &Place, x: &LocalElement) -> Result<LocalNumber, FunctionFieldError> {
        Ok(self.root(psi_exponent_local(&self.ground, v, x)?).clone())
    }

    pub fn psi_global(&self, x: &Adele) -> Result<LocalNumber, FunctionFieldError> {
        Ok(self.root(psi_exponent_global(&self.ground, x)?).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::local::expand_at;
    use crate::function_field::poly::Poly;
    use crate::function_field::rational::RationalFunction;

    #[test]
    fn conductor_examples() {
        let k = GroundField::new(3, 1).unwrap();
        let f = FieldConfig::new(7, 1, 10).unwrap();
        let psi = AdditiveCharacter::new(&k, &f).unwrap();
        let t = Place::Finite(Poly::t());
        let inv_t = RationalFunction::new(&k, Poly::one(), Poly::t()).unwrap();
        let v = psi.psi_local(&t, &expand_at(&k, &inv_t, &t, 4)).unwrap();
        assert_ne!(v, LocalNumber::one(&f));
        assert_eq!(v, psi.roots()[1]);
        let integral = expand_at(&k, &RationalFunction::t(), &t, 4);
        assert_eq!(psi.psi_local(&t, &integral).unwrap(), LocalNumber::one(&f));
        // valuation 2 at infinity is in the kernel, valuation 1 need not be
        let s2 = LocalElement::uniformizer_power(Place::Infinity, 2, 3);
        assert_eq!(psi_exponent_local(&k, &Place::Infinity, &s2).unwrap(), 0);
        let s1 = LocalElement::uniformizer_power(Place::Infinity, 1, 3);
        assert_eq!(psi_exponent_local(&k, &Place::Infinity, &s1).unwrap(), 2);
    }

    #[test]
    fn principal_adeles_are_in_the_kernel() {
        let k = GroundField::new(2, 2).unwrap();
        // γ = (t^2 + 3)/(t^3 + t + 1) over F_4, embedded at its poles and infinity
        let g = RationalFunction::new(&k, Poly::from_coeffs(vec![3, 0, 1]), Poly::from_coeffs(vec![1, 1, 0, 1])).unwrap();
        let mut places = g.finite_poles(&k);
        places.push(Place::Infinity);
        let a = Adele::diagonal(&k, &g, &places, 6);
        assert_eq!(psi_exponent_global(&k, &a).unwrap(), 0);
    }
}
