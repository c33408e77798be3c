use std::collections::{BTreeMap, BTreeSet};

use crate::function_field::{finite_places_up_to, GroundField, LocalElement, Place};

use super::GlobalError;

/// The `v`-component `ϖ^c · [[ϖ^{a_1}, x], [0, ϖ^{a_2}]]` of a point of `Z(𝔸)P(𝔸)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPoint {
    pub x: LocalElement,
    pub a1: i64,
    pub a2: i64,
}

/// A point of `Z(𝔸)·B(𝔸)` with finite support; absent places are the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MirabolicPoint {
    local: BTreeMap<Place, LocalPoint>,
    central: BTreeMap<Place, i64>,
}

impl MirabolicPoint {
    pub fn identity() -> Self {
        MirabolicPoint::default()
    }

    /// Sets the upper-triangular part at `x.place()`.
    pub fn with_local(mut self, x: LocalElement, a1: i64, a2: i64) -> Self {
        self.set_local(x, a1, a2);
        self
    }

    pub fn with_central(mut self, v: Place, c: i64) -> Self {
        self.set_central(v, c);
        self
    }

    pub fn set_local(&mut self, x: LocalElement, a1: i64, a2: i64) {
        let v = x.place().clone();
        if x.is_exact_zero() && a1 == 0 && a2 == 0 {
            self.local.remove(&v);
        } else {
            self.local.insert(v, LocalPoint { x, a1, a2 });
        }
    }

    pub fn set_central(&mut self, v: Place, c: i64) {
        if c == 0 {
            self.central.remove(&v);
        } else {
            self.central.insert(v, c);
        }
    }

    pub fn local(&self) -> &BTreeMap<Place, LocalPoint> {
        &self.local
    }

    pub fn central(&self) -> &BTreeMap<Place, i64> {
        &self.central
    }

    pub fn local_at(&self, v: &Place) -> Option<&LocalPoint> {
        self.local.get(v)
    }

    pub fn central_at(&self, v: &Place) -> i64 {
        self.central.get(v).copied().unwrap_or(0)
    }

    /// `(a_1, a_2)` at `v`.
    pub fn exponents_at(&self, v: &Place) -> (i64, i64) {
        self.local.get(v).map_or((0, 0), |p| (p.a1, p.a2))
    }

    pub fn support(&self) -> BTreeSet<Place> {
        self.local.keys().chain(self.central.keys()).cloned().collect()
    }

    /// Whether every component has `a_2 = 0` and no central part, i.e. the point lies in `P(𝔸)`.
    pub fn is_mirabolic(&self) -> bool {
        self.central.is_empty() && self.local.values().all(|p| p.a2 == 0)
    }

    /// Left translation by `[[1, u], [0, 1]]` at `v`, with `u` integral: `x ↦ x + u·ϖ^{a_2}`.
    pub fn translated(&self, k: &GroundField, u: &LocalElement) -> Result<Self, GlobalError> {
        let v = u.place().clone();
        let mut out = self.clone();
        let lp = self.local.get(&v).cloned().unwrap_or(LocalPoint { x: LocalElement::zero(v.clone()), a1: 0, a2: 0 });
        let x = lp.x.add(k, &u.shift(lp.a2))?;
        out.local.insert(v, LocalPoint { x, ..lp });
        Ok(out)
    }
}

/// Deterministic sample of `Z(𝔸)P(𝔸)` points.
///
/// Candidates have support at a single place of degree `≤ 2` (finite places in order, then
/// infinity), with `a_1 ∈ [−2, 2]`, `x ∈ {0, 1, ϖ^{−1}}`, and a central exponent in
/// `[−1, 1]`. The identity comes first; the rest are taken with a fixed stride so that every
/// place and exponent is represented, up to `cap` points.
pub fn default_samples(k: &GroundField, cap: usize, precision: u32) -> Vec<MirabolicPoint> {
    let mut places = finite_places_up_to(k, 2);
    places.push(Place::Infinity);
    let mut candidates = Vec::new();
    for v in &places {
        let xs = [
            LocalElement::zero(v.clone()),
            LocalElement::uniformizer_power(v.clone(), 0, precision),
            LocalElement::uniformizer_power(v.clone(), -1, precision),
        ];
        for a1 in -2..=2 {
            for x in &xs {
                for c in -1..=1 {
                    let p = MirabolicPoint::identity().with_local(x.clone(), a1, 0).with_central(v.clone(), c);
                    if p != MirabolicPoint::identity() {
                        candidates.push(p);
                    }
                }
            }
        }
    }
    let mut out = vec![MirabolicPoint::identity()];
    if cap <= 1 {
        out.truncate(cap);
        return out;
    }
    let want = cap - 1;
    if candidates.len() <= want {
        out.extend(candidates);
        return out;
    }
    // a stride coprime to the candidate count visits distinct indices
    let n = candidates.len();
    let mut stride = n / want;
    while gcd(stride, n) != 1 {
        stride += 1;
    }
    let mut i = 0;
    for _ in 0..want {
        out.push(candidates[i].clone());
        i = (i + stride) % n;
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_distinct_and_capped() {
        let k = GroundField::new(3, 1).unwrap();
        let s = default_samples(&k, 50, 8);
        assert_eq!(s.len(), 50);
        assert_eq!(s[0], MirabolicPoint::identity());
        for (i, a) in s.iter().enumerate() {
            assert!(s[i + 1..].iter().all(|b| b != a));
            assert!(a.local().values().all(|p| p.a2 == 0));
        }
        assert_eq!(default_samples(&k, 1, 8), vec![MirabolicPoint::identity()]);
    }

    #[test]
    fn translation_shifts_by_the_lower_diagonal() {
        let k = GroundField::new(2, 1).unwrap();
        let v = Place::Infinity;
        let g = MirabolicPoint::identity().with_local(LocalElement::zero(v.clone()), 0, 3);
        let u = LocalElement::uniformizer_power(v.clone(), 0, 4);
        let h = g.translated(&k, &u).unwrap();
        assert_eq!(h.local_at(&v).unwrap().x.valuation(), Some(3));
    }
}
