//! Closed-form bounds on linkedness and the table of possible values of k(d).

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{0}")]
    Domain(String),
}

/// ⌊(d + 2)/3⌋: every d-polytope is at least this linked.
pub fn k_lower_general(d: usize) -> Result<usize, BoundsError> {
    if d == 0 {
        return Err(BoundsError::Domain("d must be at least 1".into()));
    }
    Ok((d + 2) / 3)
}

/// ⌊(2d + 3)/5⌋: some d-polytope is at most this linked.
pub fn k_upper_gallivan(d: usize) -> Result<usize, BoundsError> {
    if d == 0 {
        return Err(BoundsError::Domain("d must be at least 1".into()));
    }
    Ok((2 * d + 3) / 5)
}

/// ⌊(d − γ + 1)/2⌋: every d-polytope on d + γ + 1 vertices is this linked.
pub fn k_few_lower(d: usize, gamma: usize) -> Result<usize, BoundsError> {
    if gamma > d {
        return Err(BoundsError::Domain(format!("γ = {gamma} exceeds d = {d}")));
    }
    Ok((d - gamma + 1) / 2)
}

/// ⌊d/2⌋: for γ ≥ 1 some d-polytope on d + γ + 1 vertices is at most this linked.
pub fn k_upper_general(d: usize, gamma: usize) -> Result<usize, BoundsError> {
    if d < 2 || gamma < 1 {
        return Err(BoundsError::Domain("needs d ≥ 2 and γ ≥ 1".into()));
    }
    Ok(d / 2)
}

/// Linkedness of P_{n,m} = Δ_{n−1} * □^{*m}.
pub fn k_pnm_formula(n: usize, m: usize) -> Result<usize, BoundsError> {
    if 4 * m + n < 2 {
        return Err(BoundsError::Domain(format!("P({n},{m}) has fewer than two vertices")));
    }
    if n < 2 * m {
        Ok((4 * m + n) / 3)
    } else {
        Ok((2 * m + n) / 2)
    }
}

/// Known exact values of k(d) for small d.
pub const IMPORTED_EXACT: [(usize, usize); 5] = [(1, 1), (2, 1), (3, 1), (4, 2), (5, 2)];

/// The range of possible values of k(d).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub d: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    /// Set when the generated row differs from the commonly tabulated one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
}

impl BoundsRow {
    pub fn values(&self) -> Vec<usize> {
        (self.lower..=self.upper).collect()
    }
}

pub fn bounds_row(d: usize) -> Result<BoundsRow, BoundsError> {
    let mut lower = k_lower_general(d)?;
    if let Some(&(_, k)) = IMPORTED_EXACT.iter().find(|&&(e, _)| e == d) {
        lower = lower.max(k);
    }
    let upper = if d >= 3 { k_upper_gallivan(d)? } else { (d + 1) / 2 };
    let discrepancy =
        (d == 15).then(|| "commonly tabulated as 5,6,7, but ⌊(2d+3)/5⌋ = 6 caps the range at 6".to_string());
    Ok(BoundsRow {
        d,
        lower,
        upper,
        exact: (lower == upper).then_some(lower),
        discrepancy,
    })
}

/// Rows for d = 1..=15.
pub fn kd_table() -> Vec<BoundsRow> {
    (1..=15).map(|d| bounds_row(d).expect("d ≥ 1")).collect()
}
