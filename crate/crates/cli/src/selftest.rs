//! A small seeded battery over the configured fields.

use ellcong::function_field::{
    coset_reps, finite_places_up_to, psi_exponent_global, quotient_index, rr_space, Adele, Divisor, GroundField, Place, Poly,
    RationalFunction,
};
use ellcong::padic::LocalNumber;
use ellcong::satake::SatakeParam;
use ellcong::whittaker::check_congruence;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::Config;
use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

const TRIALS: usize = 20;

fn unit(rng: &mut ChaCha8Rng, ell: u64) -> i64 {
    loop {
        let x: i64 = rng.gen_range(1..1000);
        if !(x as u64).is_multiple_of(ell) {
            return x;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, k: &GroundField, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| rng.gen_range(0..k.q())).collect())
}

fn random_divisor(rng: &mut ChaCha8Rng, places: &[Place], lo: i64, hi: i64) -> Divisor {
    let mut d = Divisor::new();
    for _ in 0..rng.gen_range(0..=3) {
        let v = places.choose(rng).expect("places").clone();
        d.add_at(v, rng.gen_range(lo..=hi));
    }
    d
}

pub fn run(cfg: &Config) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let field = cfg.field()?;
    let k = cfg.ground()?;
    let ell = cfg.ell;
    let mut checks = Vec::new();

    // Congruent Satake pairs give congruent Whittaker values.
    let mut c = Check { name: "whittaker-congruence", passed: 0, failed: 0 };
    for _ in 0..TRIALS {
        let n = rng.gen_range(1..=3);
        let q = k.q() as u64;
        let mu: Vec<i64> = (0..n).map(|_| unit(&mut rng, ell)).collect();
        let mut mu2: Vec<LocalNumber> = mu
            .iter()
            .map(|&m| LocalNumber::from_integer(&field, m * (1 + ell as i64 * rng.gen_range(-5..=5))))
            .collect();
        mu2.shuffle(&mut rng);
        let s1 = SatakeParam::new(q, mu.iter().map(|&m| LocalNumber::from_integer(&field, m)).collect())?;
        let s2 = SatakeParam::new(q, mu2)?;
        match check_congruence(&s1, &s2, cfg.bound.min(2))? {
            r if r.passed() => c.passed += 1,
            _ => c.failed += 1,
        }
    }
    checks.push(c);

    // ψ is trivial on principal adeles.
    let mut c = Check { name: "psi-principal", passed: 0, failed: 0 };
    for _ in 0..TRIALS {
        let num = random_poly(&mut rng, &k, 4);
        let mut den = random_poly(&mut rng, &k, 4);
        if den.is_zero() {
            den = Poly::one();
        }
        let g = RationalFunction::new(&k, num, den)?;
        let mut places = g.finite_poles(&k);
        places.push(Place::Infinity);
        let a = Adele::diagonal(&k, &g, &places, cfg.local_precision);
        if psi_exponent_global(&k, &a)? == 0 {
            c.passed += 1;
        } else {
            c.failed += 1;
        }
    }
    checks.push(c);

    let mut places = finite_places_up_to(&k, 2);
    places.push(Place::Infinity);

    // dim L(D) = max(deg D + 1, 0), with every basis element in L(D).
    let mut c = Check { name: "riemann-roch", passed: 0, failed: 0 };
    for _ in 0..TRIALS {
        let d = random_divisor(&mut rng, &places, -3, 3);
        let basis = rr_space(&k, &d);
        let ok = basis.len() as i64 == (d.degree() + 1).max(0)
            && basis.iter().all(|f| ellcong::function_field::in_rr_space(&k, f, &d).unwrap_or(false));
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
        }
    }
    checks.push(c);

    // [𝔸 : k + U] is a power of p and matches the number of representatives.
    let mut c = Check { name: "index-p-power", passed: 0, failed: 0 };
    for _ in 0..TRIALS {
        let u = random_divisor(&mut rng, &places, 0, 2);
        let idx = quotient_index(&k, &u)?;
        let mut r = idx;
        while r % k.p() as u128 == 0 {
            r /= k.p() as u128;
        }
        let ok = r == 1 && (idx > cfg.cap as u128 || coset_reps(&k, &u, cfg.cap)?.len() as u128 == idx);
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
        }
    }
    checks.push(c);
    Ok(checks)
}
