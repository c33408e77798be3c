use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::config::{FieldConfig, Residue};
use super::fp_poly;
use super::intpoly;
use super::number::{unit_inverse_mod, LocalNumber, Valuation};
use super::PadicError;

/// Evaluates `Σ f_i x^i` (constant term first) with a single final summation.
pub fn poly_eval(f: &[LocalNumber], x: &LocalNumber) -> Result<LocalNumber, PadicError> {
    let field = x.field();
    let mut terms = Vec::with_capacity(f.len());
    let mut power = LocalNumber::one(field);
    for (i, c) in f.iter().enumerate() {
        terms.push(c.mul(&power)?);
        if i + 1 < f.len() {
            power = power.mul(x)?;
        }
    }
    LocalNumber::sum(field, &terms)
}

fn reduce_poly(f: &[LocalNumber]) -> Result<Vec<Residue>, PadicError> {
    f.iter().map(|c| c.reduce()).collect()
}

fn derivative(field: &FieldConfig, f: &[LocalNumber]) -> Vec<LocalNumber> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&LocalNumber::from_integer(field, i as i64)).expect("same field"))
        .collect()
}

/// Evaluates an integer polynomial over `Z[α]/(ℓ^k)`.
fn eval_mod(field: &FieldConfig, coeffs: &[Vec<BigInt>], x: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); field.degree()];
    for c in coeffs.iter().rev() {
        acc = intpoly::mul_reduce(&acc, x, field.modulus_big());
        for (a, b) in acc.iter_mut().zip(c) {
            *a += b;
        }
        intpoly::mod_all(&mut acc, m);
    }
    acc
}

/// Lifts a simple residue root `r0` of `f` to a root modulo `ℓ^N`.
///
/// Coefficients are rescaled to be integral with a unit among them. Degree-one
/// polynomials with exact coefficients return the exact root.
pub fn hensel_root(f: &[LocalNumber], r0: &Residue) -> Result<LocalNumber, PadicError> {
    let mut f: Vec<LocalNumber> = f.to_vec();
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    let field = match f.first() {
        Some(c) => c.field().clone(),
        None => return Err(PadicError::NoSimpleRoot),
    };
    for c in &f {
        field.ensure_same(c.field())?;
    }
    if f.len() < 2 {
        return Err(PadicError::NoSimpleRoot);
    }
    if f.len() == 2 && f.iter().all(|c| c.is_exact()) {
        let root = f[0].neg().div(&f[1])?;
        if root.is_integral() && root.reduce()? == *r0 {
            return Ok(root);
        }
        return Err(PadicError::NoSimpleRoot);
    }

    let min_val = f
        .iter()
        .filter_map(|c| c.valuation().finite())
        .min()
        .expect("nonzero coefficient present");
    let scale = LocalNumber::uniformizer(&field).pow(-min_val)?;
    let g: Vec<LocalNumber> = f.iter().map(|c| c.mul(&scale)).collect::<Result<_, _>>()?;

    let g_bar = reduce_poly(&g)?;
    let dg_bar = reduce_poly(&derivative(&field, &g))?;
    if !field.residue_eval(&g_bar, r0).is_zero() || field.residue_eval(&dg_bar, r0).is_zero() {
        return Err(PadicError::NoSimpleRoot);
    }

    let prec = g
        .iter()
        .filter_map(|c| c.absolute_precision())
        .min()
        .unwrap_or(field.precision() as i64)
        .min(field.precision() as i64);
    if prec < 1 {
        return Err(PadicError::PrecisionLoss { at_least: prec });
    }
    let prec = prec as u32;
    let coeffs: Vec<Vec<BigInt>> = g
        .iter()
        .map(|c| match c.valuation() {
            Valuation::Infinity => vec![BigInt::zero(); field.degree()],
            Valuation::Finite(v) if v as u32 >= prec => vec![BigInt::zero(); field.degree()],
            Valuation::Finite(v) => {
                let s = field.ell_pow(v as u32);
                c.unit_mod(prec - v as u32).into_iter().map(|u| u * &s).collect()
            }
        })
        .collect();
    let dcoeffs: Vec<Vec<BigInt>> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.iter().map(|x| x * BigInt::from(i)).collect())
        .collect();

    let mut x: Vec<BigInt> = r0.coeffs().iter().map(|&c| BigInt::from(c)).collect();
    let mut known = 1u32;
    while known < prec {
        known = (known * 2).min(prec);
        let m = field.ell_pow(known);
        let fx = eval_mod(&field, &coeffs, &x, &m);
        let dfx = eval_mod(&field, &dcoeffs, &x, &m);
        let dinv = unit_inverse_mod(&field, &dfx, known);
        let step = intpoly::mul_reduce(&fx, &dinv, field.modulus_big());
        for (a, b) in x.iter_mut().zip(step) {
            *a = (&*a - b).mod_floor(&m);
        }
    }

    let ell = BigInt::from(field.ell());
    let t = intpoly::content_val_capped(&x, &ell, prec);
    if t >= prec {
        return if g[0].is_zero() {
            Ok(LocalNumber::zero(&field))
        } else {
            Err(PadicError::PrecisionLoss { at_least: prec as i64 })
        };
    }
    let d = field.ell_pow(t);
    let unit: Vec<BigInt> = x.iter().map(|c| c / &d).collect();
    LocalNumber::from_approx_parts(&field, t as i64, unit, prec - t)
}

/// The `p`-th roots of unity `[1, ζ, ζ², …, ζ^{p−1}]` in `Q_{ℓ^d}`.
///
/// `ζ` reduces to the canonically smallest primitive `p`-th root of unity of the residue field.
pub fn pth_roots_of_unity(field: &FieldConfig, p: u64) -> Result<Vec<LocalNumber>, PadicError> {
    if !fp_poly::is_prime(p) || p == field.ell() {
        return Err(PadicError::UnsupportedDegree { p, ell: field.ell(), d: field.degree() });
    }
    let order = field
        .residue_field_size()
        .ok_or_else(|| PadicError::InvalidInput("residue field too large".into()))?
        - 1;
    if order % p as u128 != 0 {
        return Err(PadicError::UnsupportedDegree { p, ell: field.ell(), d: field.degree() });
    }
    if p == 2 {
        return Ok(vec![LocalNumber::one(field), LocalNumber::from_integer(field, -1)]);
    }
    let cofactor = order / p as u128;
    let one = field.residue_one();
    let generator = field
        .residues()
        .filter(|r| !r.is_zero())
        .map(|r| field.residue_pow(&r, cofactor))
        .find(|y| !y.is_one())
        .expect("multiplicative group has an element of order p");
    let mut residues = Vec::with_capacity(p as usize);
    let mut cur = one.clone();
    for _ in 0..p {
        residues.push(cur.clone());
        cur = field.residue_mul(&cur, &generator);
    }
    // every nontrivial power is primitive; choose the canonically smallest as ζ̄
    let zeta_bar = residues[1..].iter().min().expect("p ≥ 3").clone();

    let mut poly = vec![LocalNumber::zero(field); p as usize + 1];
    poly[0] = LocalNumber::from_integer(field, -1);
    poly[p as usize] = LocalNumber::one(field);
    let zeta = hensel_root(&poly, &zeta_bar)?;
    let mut out = Vec::with_capacity(p as usize);
    let mut cur = LocalNumber::one(field);
    for _ in 0..p {
        out.push(cur.clone());
        cur = cur.mul(&zeta)?;
    }
    Ok(out)
}

/// The square root of `n` reducing to the canonically smallest residue root.
///
/// Needs `ℓ` odd, `ℓ ∤ n`, and `n` a square in the residue field; otherwise `NoSimpleRoot`.
pub fn sqrt_of_integer(field: &FieldConfig, n: i64) -> Result<LocalNumber, PadicError> {
    let target = field.residue_from_int(n);
    if field.ell() == 2 || target.is_zero() {
        return Err(PadicError::NoSimpleRoot);
    }
    let r0 = field
        .residues()
        .find(|r| field.residue_mul(r, r) == target)
        .ok_or(PadicError::NoSimpleRoot)?;
    let f = [LocalNumber::from_integer(field, -n), LocalNumber::zero(field), LocalNumber::one(field)];
    hensel_root(&f, &r0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn square_root_of_two_mod_49() {
        let cfg = FieldConfig::new(7, 1, 2).unwrap();
        let f = vec![
            LocalNumber::from_integer(&cfg, -2),
            LocalNumber::zero(&cfg),
            LocalNumber::one(&cfg),
        ];
        let x = hensel_root(&f, &cfg.residue_from_int(3)).unwrap();
        let digits = x.unit_digits();
        let value = digits[0][0] + 7 * digits[0][1];
        assert_eq!(value, 10);
    }

    #[test]
    fn linear_polynomial_returns_constant() {
        let cfg = FieldConfig::new(7, 1, 8).unwrap();
        let c = LocalNumber::from_rational(&cfg, 5, 3).unwrap();
        let f = vec![c.neg(), LocalNumber::one(&cfg)];
        let x = hensel_root(&f, &c.reduce().unwrap()).unwrap();
        assert_eq!(x, c);
    }

    #[test]
    fn non_simple_root_rejected() {
        let cfg = FieldConfig::new(7, 1, 8).unwrap();
        // (X − 1)^2
        let f = vec![
            LocalNumber::one(&cfg),
            LocalNumber::from_integer(&cfg, -2),
            LocalNumber::one(&cfg),
        ];
        assert_eq!(hensel_root(&f, &cfg.residue_one()), Err(PadicError::NoSimpleRoot));
        // not a root at all
        assert_eq!(hensel_root(&f, &cfg.residue_from_int(3)), Err(PadicError::NoSimpleRoot));
    }

    #[test]
    fn cube_roots_of_unity_mod_7() {
        let cfg = FieldConfig::new(7, 1, 16).unwrap();
        let roots = pth_roots_of_unity(&cfg, 3).unwrap();
        let mut res: Vec<u64> = roots.iter().map(|r| r.reduce().unwrap().coeffs()[0]).collect();
        assert_eq!(res, vec![1, 2, 4]);
        res.sort();
        for r in &roots {
            let cube = r.pow(3).unwrap();
            assert!(cube.agrees_with(&LocalNumber::one(&cfg)));
            assert_eq!(cube.unit_digits()[0].iter().map(|d| d.to_u64().unwrap()).sum::<u64>(), 1);
        }
    }

    #[test]
    fn roots_of_unity_need_dividing_degree() {
        let cfg = FieldConfig::new(7, 1, 8).unwrap();
        assert!(matches!(pth_roots_of_unity(&cfg, 5), Err(PadicError::UnsupportedDegree { .. })));
        assert!(matches!(pth_roots_of_unity(&cfg, 7), Err(PadicError::UnsupportedDegree { .. })));
        let sq = pth_roots_of_unity(&cfg, 2).unwrap();
        assert_eq!(sq[1], LocalNumber::from_integer(&cfg, -1));
        // 5 | 7^4 − 1
        let cfg4 = FieldConfig::new(7, 4, 8).unwrap();
        let roots = pth_roots_of_unity(&cfg4, 5).unwrap();
        assert_eq!(roots.len(), 5);
    }

    #[test]
    fn integer_square_roots() {
        let f = FieldConfig::new(13, 1, 20).unwrap();
        let r = sqrt_of_integer(&f, 3).unwrap();
        assert!(r.mul(&r).unwrap().agrees_with(&LocalNumber::from_integer(&f, 3)));
        assert_eq!(sqrt_of_integer(&f, 2), Err(PadicError::NoSimpleRoot));
        let f2 = FieldConfig::new(13, 2, 20).unwrap();
        assert!(sqrt_of_integer(&f2, 2).is_ok());
    }
}
