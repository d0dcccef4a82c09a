//! Normal cells of `Sp(n)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A cell `(i_1, ..., i_r)` with `i_1 > ... > i_r > 0`; the empty tuple is the 0-cell `I_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalCell {
    indices: Vec<usize>,
}

impl NormalCell {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::DomainError("cell indices must be positive".into()));
        }
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::DomainError(
                "cell indices must be strictly decreasing".into(),
            ));
        }
        Ok(Self { indices })
    }

    pub fn zero_cell() -> Self {
        Self { indices: vec![] }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_zero_cell(&self) -> bool {
        self.indices.is_empty()
    }

    /// `sum (4 i_j - 1)`.
    pub fn dimension(&self) -> usize {
        self.indices.iter().map(|&i| 4 * i - 1).sum()
    }
}

impl fmt::Display for NormalCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_cell() {
            return write!(f, "0-cell");
        }
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dimension of `Sp(n)` as a manifold.
pub fn dim_sp(n: usize) -> usize {
    2 * n * n + n
}

/// All normal cells of `Sp(n)` plus the 0-cell, ordered by dimension.
pub fn cells(n: usize) -> Vec<NormalCell> {
    assert!((1..usize::BITS as usize).contains(&n), "n out of range");
    let mut out: Vec<NormalCell> = (0..1usize << n)
        .map(|mask| NormalCell {
            indices: (1..=n)
                .rev()
                .filter(|i| mask & (1 << (i - 1)) != 0)
                .collect(),
        })
        .collect();
    out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
    out
}

/// Cell counts by dimension; entry `d` is the coefficient of `t^d`.
pub fn poincare_polynomial(n: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; dim_sp(n) + 1];
    for c in cells(n) {
        coeffs[c.dimension()] += 1;
    }
    coeffs
}
