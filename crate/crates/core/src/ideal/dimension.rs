use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactpoly::Monomial;

use super::{Ideal, IdealError};

/// Krull dimension of `Q[x]/I`. The unit ideal defines the empty variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Empty,
    Dim(usize),
}

impl Dimension {
    pub fn value(self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Dim(d) => Some(d),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Dimension from a Groebner basis under any order: the largest set of
/// variables containing the support of no leading monomial.
pub fn krull_dim(ideal: &Ideal) -> Result<Dimension, IdealError> {
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(Dimension::Empty);
    }
    let lms: Vec<Monomial> = gb.leading_monomials().cloned().collect();
    Ok(Dimension::Dim(independent_set_dimension(ideal.ring().nvars(), &lms)?))
}

/// Size of a maximum set `S` of variables such that no monomial in
/// `leading` is supported inside `S`.
pub fn independent_set_dimension(nvars: usize, leading: &[Monomial]) -> Result<usize, IdealError> {
    if nvars > 128 {
        return Err(IdealError::TooManyVariables(nvars));
    }
    let mut masks: Vec<u128> = leading
        .iter()
        .map(|m| m.support().fold(0u128, |acc, i| acc | (1u128 << i)))
        .collect();
    if masks.iter().any(|&m| m == 0) {
        return Ok(0);
    }
    masks.sort_unstable();
    masks.dedup();
    let mut best = 0;
    search(0, nvars, 0, 0, &masks, &mut best);
    Ok(best)
}

fn search(v: usize, n: usize, chosen: u128, size: usize, masks: &[u128], best: &mut usize) {
    if size > *best {
        *best = size;
    }
    if v == n || size + (n - v) <= *best {
        return;
    }
    let with = chosen | (1u128 << v);
    if masks.iter().all(|&m| m & with != m) {
        search(v + 1, n, with, size + 1, masks, best);
    }
    search(v + 1, n, chosen, size, masks, best);
}
