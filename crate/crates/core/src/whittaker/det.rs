use crate::padic::{FieldConfig, LocalNumber, PadicError};

/// Division-free determinant over a commutative ring.
///
/// Small matrices use the permutation expansion with a single final summation, so only
/// the determinant itself can trigger a precision failure. Larger ones fall back to
/// Laplace expansion along the first row with memoised minors.
pub(crate) fn determinant(field: &FieldConfig, m: &[Vec<LocalNumber>]) -> Result<LocalNumber, PadicError> {
    let n = m.len();
    if n == 0 {
        return Ok(LocalNumber::one(field));
    }
    if n <= 7 {
        permutation_expansion(field, m)
    } else {
        let mut memo = std::collections::HashMap::new();
        laplace(field, m, 0, (1u64 << n) - 1, &mut memo)
    }
}

fn permutation_expansion(field: &FieldConfig, m: &[Vec<LocalNumber>]) -> Result<LocalNumber, PadicError> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut terms = Vec::new();
    let mut push_term = |perm: &[usize], sign: bool| -> Result<(), PadicError> {
        if perm.iter().enumerate().any(|(i, &j)| m[i][j].is_zero()) {
            return Ok(());
        }
        let prod = LocalNumber::product(field, perm.iter().enumerate().map(|(i, &j)| &m[i][j]))?;
        terms.push(if sign { prod } else { prod.neg() });
        Ok(())
    };
    // Heap's algorithm; each swap flips the sign
    let mut c = vec![0usize; n];
    let mut sign = true;
    push_term(&perm, sign)?;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = !sign;
            push_term(&perm, sign)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    LocalNumber::sum(field, &terms)
}

fn laplace(
    field: &FieldConfig,
    m: &[Vec<LocalNumber>],
    row: usize,
    cols: u64,
    memo: &mut std::collections::HashMap<u64, LocalNumber>,
) -> Result<LocalNumber, PadicError> {
    if cols == 0 {
        return Ok(LocalNumber::one(field));
    }
    if let Some(v) = memo.get(&cols) {
        return Ok(v.clone());
    }
    let mut terms = Vec::new();
    let mut parity = 0;
    for j in 0..m.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        if !m[row][j].is_zero() {
            let minor = laplace(field, m, row + 1, cols & !(1 << j), memo)?;
            let t = m[row][j].mul(&minor)?;
            terms.push(if parity % 2 == 0 { t } else { t.neg() });
        }
        parity += 1;
    }
    let v = LocalNumber::sum(field, &terms)?;
    memo.insert(cols, v.clone());
    Ok(v)
}
