use std::collections::BTreeMap;
use std::fmt;

use super::ground::GroundField;
use super::poly::{is_irreducible, monic_irreducibles, Poly};
use super::FunctionFieldError;

/// A place of `F_q(t)`: a monic irreducible polynomial, or the place at infinity.
///
/// Finite places sort before infinity, and among themselves by their polynomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Validates that `p` is monic and irreducible.
    pub fn finite(k: &GroundField, p: Poly) -> Result<Self, FunctionFieldError> {
        if !p.is_monic() || !is_irreducible(k, &p) {
            return Err(FunctionFieldError::NotIrreducible(p.to_string()));
        }
        Ok(Place::Finite(p))
    }

    /// The degree-one place `t − a`.
    pub fn linear(k: &GroundField, a: u32) -> Self {
        Place::Finite(Poly::from_coeffs(vec![k.neg(a), 1]))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// Uniformizer in the local variable: `P` itself, or `s = 1/t` at infinity.
    pub(crate) fn local_uniformizer(&self) -> Poly {
        match self {
            Place::Finite(p) => p.clone(),
            Place::Infinity => Poly::t(),
        }
    }

    /// Residue field size `q^{deg}`.
    pub fn norm(&self, k: &GroundField) -> u64 {
        (k.q() as u64).pow(self.degree() as u32)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "({p})"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// All finite places of degree `≤ max_degree`, in increasing order.
pub fn finite_places_up_to(k: &GroundField, max_degree: usize) -> Vec<Place> {
    (1..=max_degree).flat_map(|e| monic_irreducibles(k, e)).map(Place::Finite).collect()
}

/// `Σ n_v · v` with finite support; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Place, i64)>>(pairs: I) -> Self {
        let mut d = Divisor::new();
        for (p, n) in pairs {
            d.add_at(p, n);
        }
        d
    }

    pub fn single(p: Place, n: i64) -> Self {
        Self::from_pairs([(p, n)])
    }

    pub fn add_at(&mut self, p: Place, n: i64) {
        let e = self.coeffs.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn get(&self, p: &Place) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: Place, n: i64) {
        if n == 0 {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, n);
        }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in other.iter() {
            d.add_at(p.clone(), n);
        }
        d
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, n)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{n}*{p}")?;
        }
        Ok(())
    }
}
