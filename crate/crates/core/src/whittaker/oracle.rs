//! Independent Schur evaluations used to cross-check the Jacobi–Trudi path.

use std::collections::BTreeMap;

use super::{det, is_dominant, Weight, WhittakerError};
use crate::padic::LocalNumber;
use crate::satake::SatakeParam;

fn split(s: &SatakeParam, a: &Weight) -> Result<(i64, Vec<usize>), WhittakerError> {
    if a.len() != s.n() {
        return Err(WhittakerError::LengthMismatch { got: a.len(), expected: s.n() });
    }
    if !is_dominant(a) {
        return Err(WhittakerError::NotDominant(a.0.clone()));
    }
    let c = a.0[s.n() - 1];
    Ok((c, a.0.iter().map(|x| (x - c) as usize).collect()))
}

/// Schur value as a sum of monomials over semistandard tableaux with entries in `1..=n`.
///
/// Limited to `n ≤ 4` and `|λ| ≤ 8`.
pub fn schur_oracle(s: &SatakeParam, a: &Weight) -> Result<LocalNumber, WhittakerError> {
    let (c, lambda) = split(s, a)?;
    let n = s.n();
    let size: usize = lambda.iter().sum();
    if n > 4 || size > 8 {
        return Err(WhittakerError::TooLarge(format!("n = {n}, |lambda| = {size}")));
    }
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |col| (r, col))).collect();
    let mut grid: Vec<Vec<usize>> = lambda.iter().map(|&len| vec![0; len]).collect();
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut content = vec![0u32; n];
    fill(&cells, 0, n, &mut grid, &mut content, &mut counts);

    let field = s.field();
    let mut terms = Vec::with_capacity(counts.len());
    for (exps, mult) in &counts {
        let mut t = LocalNumber::from_integer(field, *mult as i64);
        for (m, &e) in s.mu().iter().zip(exps) {
            t = t.mul(&m.pow(e as i64)?)?;
        }
        terms.push(t);
    }
    let value = LocalNumber::sum(field, &terms)?;
    let det_part = LocalNumber::product(field, s.mu())?;
    Ok(value.mul(&det_part.pow(c)?)?)
}

fn fill(
    cells: &[(usize, usize)],
    idx: usize,
    n: usize,
    grid: &mut [Vec<usize>],
    content: &mut [u32],
    counts: &mut BTreeMap<Vec<u32>, u64>,
) {
    if idx == cells.len() {
        *counts.entry(content.to_vec()).or_insert(0) += 1;
        return;
    }
    let (r, col) = cells[idx];
    let left = if col > 0 { grid[r][col - 1] } else { 1 };
    let above = if r > 0 { grid[r - 1][col] + 1 } else { 1 };
    for v in left.max(above)..=n {
        grid[r][col] = v;
        content[v - 1] += 1;
        fill(cells, idx + 1, n, grid, content, counts);
        content[v - 1] -= 1;
    }
}

/// `det(μ_j^{a_l + n − l}) / ∏_{j<l} (μ_j − μ_l)`, the classical quotient.
///
/// Only meaningful when the parameters are pairwise distinct; precision degrades with the
/// valuation of the Vandermonde.
pub fn bialternant(s: &SatakeParam, a: &Weight) -> Result<LocalNumber, WhittakerError> {
    split(s, a)?;
    let n = s.n();
    let field = s.field();
    let mu = s.mu();
    let mut m = Vec::with_capacity(n);
    for mj in mu {
        let mut row = Vec::with_capacity(n);
        for (l, al) in a.0.iter().enumerate() {
            row.push(mj.pow(al + (n - 1 - l) as i64)?);
        }
        m.push(row);
    }
    let num = det::determinant(field, &m)?;
    let mut diffs = Vec::new();
    for j in 0..n {
        for l in j + 1..n {
            diffs.push(mu[j].sub(&mu[l])?);
        }
    }
    let vandermonde = LocalNumber::product(field, &diffs)?;
    Ok(num.div(&vandermonde)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::FieldConfig;

    fn param(f: &FieldConfig, mu: &[i64]) -> SatakeParam {
        SatakeParam::new(2, mu.iter().map(|&m| LocalNumber::from_integer(f, m)).collect()).unwrap()
    }

    #[test]
    fn tableau_counts() {
        let f = FieldConfig::new(7, 1, 16).unwrap();
        let s = param(&f, &[1, 1, 1]);
        assert_eq!(schur_oracle(&s, &Weight(vec![2, 1, 0])).unwrap(), LocalNumber::from_integer(&f, 8));
        let s = param(&f, &[3, 5, 4]);
        assert_eq!(schur_oracle(&s, &Weight(vec![1, 0, 0])).unwrap(), LocalNumber::from_integer(&f, 12));
        assert_eq!(schur_oracle(&s, &Weight(vec![1, 1, 0])).unwrap(), LocalNumber::from_integer(&f, 47));
        assert!(matches!(schur_oracle(&s, &Weight(vec![9, 0, 0])), Err(WhittakerError::TooLarge(_))));
    }

    #[test]
    fn bialternant_small() {
        let f = FieldConfig::new(7, 1, 16).unwrap();
        let s = param(&f, &[3, 2]);
        // h_2(3, 2) = 9 + 6 + 4
        assert_eq!(bialternant(&s, &Weight(vec![2, 0])).unwrap(), LocalNumber::from_integer(&f, 19));
    }
}
