//! Weak approximation: a global `y ∈ k` close to prescribed local targets.

use super::ground::GroundField;
use super::local::{expand_to_abs, LocalElement};
use super::place::Place;
use super::poly::{inv_mod, monic_irreducibles, Poly};
use super::rational::RationalFunction;
use super::FunctionFieldError;

/// Requirement `ord_v(y − target) ≥ precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxConstraint {
    pub place: Place,
    pub target: LocalElement,
    pub precision: i64,
}

impl ApproxConstraint {
    pub fn new(place: Place, target: LocalElement, precision: i64) -> Self {
        ApproxConstraint { place, target, precision }
    }
}

/// `A` with `A ≡ r_i mod m_i` for pairwise coprime moduli.
fn crt(k: &GroundField, residues: &[(Poly, Poly)]) -> Poly {
    let mut acc = Poly::zero();
    let mut modulus = Poly::one();
    for (r, m) in residues {
        let diff = r.sub(k, &acc).rem(k, m);
        let inv = inv_mod(k, &modulus, m).expect("coprime moduli");
        let lift = diff.mul(k, &inv).rem(k, m);
        acc = acc.add(k, &modulus.mul(k, &lift));
        modulus = modulus.mul(k, m);
        acc = acc.rem(k, &modulus);
    }
    acc
}

/// Smallest monic irreducible polynomial whose place is not in `used`.
fn auxiliary_place(k: &GroundField, used: &[Place]) -> Poly {
    (1..)
        .flat_map(|e| monic_irreducibles(k, e))
        .find(|p| !used.contains(&Place::Finite(p.clone())))
        .expect("infinitely many places")
}

/// `y ∈ k` with `ord_v(y − target_v) ≥ precision_v` for every constraint.
///
/// The finite constraints are solved by the Chinese remainder theorem as `A/H`, with `H`
/// clearing the target poles. A constraint at infinity is met by adding `Q·w/H`, where `Q`
/// is the product of the finite moduli and `w` is a polynomial plus a tail `C/R^j` with poles
/// only at an unconstrained auxiliary place `R`.
pub fn weak_approx(k: &GroundField, constraints: &[ApproxConstraint]) -> Result<RationalFunction, FunctionFieldError> {
    let mut places: Vec<Place> = constraints.iter().map(|c| c.place.clone()).collect();
    places.sort();
    if places.windows(2).any(|w| w[0] == w[1]) {
        return Err(FunctionFieldError::InvalidInput("constraint places must be distinct".into()));
    }
    for c in constraints {
        if c.target.place() != &c.place {
            return Err(FunctionFieldError::PlaceMismatch);
        }
        if let Some(abs) = c.target.absolute_precision() {
            if abs < c.precision {
                return Err(FunctionFieldError::InsufficientPrecision {
                    place: c.place.to_string(),
                    needed: c.precision,
                    available: abs,
                });
            }
        }
    }

    let mut h = Poly::one();
    let mut finite = Vec::new();
    for c in constraints {
        if let Place::Finite(p) = &c.place {
            let hv = (-c.target.valuation().unwrap_or(0)).max(0);
            h = h.mul(k, &p.pow(k, hv as u64));
            finite.push((c, p, hv));
        }
    }
    let h_rat = RationalFunction::from_poly(h.clone());
    let mut residues = Vec::new();
    let mut q = Poly::one();
    for (c, p, hv) in &finite {
        let e = c.precision + hv;
        if e <= 0 {
            continue;
        }
        let hx = expand_to_abs(k, &h_rat, &c.place, e - c.target.valuation().unwrap_or(0)).mul(k, &c.target)?;
        let m = p.pow(k, e as u64);
        residues.push((hx.to_poly_mod(k, e)?, m.clone()));
        q = q.mul(k, &m);
    }
    let a = crt(k, &residues);
    let y0 = RationalFunction::new(k, a, h.clone())?;

    let Some(inf) = constraints.iter().find(|c| c.place.is_infinite()) else {
        return verify(k, y0, constraints);
    };
    let big_k = inf.precision + q.deg() - h.deg();
    let h_over_q = RationalFunction::new(k, h.clone(), q.clone())?;
    // z' = (z − y0)·H/Q, needed to absolute precision K
    let y0_exp = expand_to_abs(k, &y0, &Place::Infinity, inf.precision);
    let diff = inf.target.sub(k, &y0_exp)?;
    let diff_val = diff.valuation().unwrap_or(inf.precision);
    let scale = expand_to_abs(k, &h_over_q, &Place::Infinity, big_k - diff_val);
    let z1 = diff.mul(k, &scale)?;

    // polynomial part B from the digits of index ≤ 0
    let mut b = Poly::zero();
    let lowest = z1.valuation().unwrap_or(0).min(0);
    for i in lowest..=0.min(big_k - 1) {
        let c = z1.digit(k, i)?.coeff(0);
        b = b.add(k, &Poly::monomial(c, (-i) as usize));
    }
    let mut w = RationalFunction::from_poly(b);
    if big_k > 1 {
        let r = auxiliary_place(k, &places);
        let dr = r.degree().expect("irreducible") as i64;
        let j = (big_k + dr - 1) / dr;
        let jj = j * dr;
        let r_rev = r.reverse(dr as usize).pow(k, j as u64);
        // tail z'' = Σ_{1 ≤ i < K} c_i s^i
        let mut tail = vec![0u32; big_k as usize];
        for (i, c) in tail.iter_mut().enumerate().skip(1) {
            *c = z1.digit(k, i as i64)?.coeff(0);
        }
        let tail = Poly::from_coeffs(tail);
        let prod = tail.mul(k, &r_rev);
        let mut c_poly = Poly::zero();
        for i in (1 - jj)..=(big_k - jj - 1) {
            let c = prod.coeff((i + jj) as usize);
            c_poly = c_poly.add(k, &Poly::monomial(c, (-i) as usize));
        }
        let tail_fn = RationalFunction::new(k, c_poly, r.pow(k, j as u64))?;
        w = w.add(k, &tail_fn);
    }
    let correction = w.mul(k, &RationalFunction::new(k, q, h)?);
    verify(k, y0.add(k, &correction), constraints)
}

fn verify(k: &GroundField, y: RationalFunction, constraints: &[ApproxConstraint]) -> Result<RationalFunction, FunctionFieldError> {
    for c in constraints {
        let e = expand_to_abs(k, &y, &c.place, c.precision);
        if !e.congruent_mod(k, &c.target, c.precision)? {
            return Err(FunctionFieldError::InvalidInput(format!("approximation failed at {}", c.place)));
        }
    }
    Ok(y)
}
