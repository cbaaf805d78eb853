use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// Exponent vector over an ambient variable table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Block order: grevlex on the first `block` variables of the priority
    /// list, ties broken by grevlex on the remaining ones. Any monomial that
    /// involves a block variable exceeds every monomial free of them.
    Elimination { block: usize },
}

/// A monomial order together with the variable priority it ranks by.
///
/// `priority[0]` is the index of the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Arc<[usize]>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self, PolyError> {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &p in &priority {
            if p >= n || seen[p] {
                return Err(PolyError::Order(format!(
                    "priority {priority:?} is not a permutation of 0..{n}"
                )));
            }
            seen[p] = true;
        }
        if let OrderKind::Elimination { block } = kind {
            if block > n {
                return Err(PolyError::Order(format!(
                    "elimination block {block} exceeds {n} variables"
                )));
            }
        }
        Ok(MonomialOrder {
            kind,
            priority: priority.into(),
        })
    }

    /// Order with the natural priority `x_0 > x_1 > ...`.
    pub fn natural(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            priority: (0..nvars).collect::<Vec<_>>().into(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::natural(OrderKind::Lex, nvars)
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::natural(OrderKind::Grevlex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.nvars());
        debug_assert_eq!(b.nvars(), self.nvars());
        match self.kind {
            OrderKind::Lex => lex_cmp(&self.priority, a, b),
            OrderKind::Grevlex => grevlex_cmp(&self.priority, a, b),
            OrderKind::Elimination { block } => {
                let (head, tail) = self.priority.split_at(block);
                grevlex_cmp(head, a, b).then_with(|| grevlex_cmp(tail, a, b))
            }
        }
    }

    /// Comparison that reports a variable-count mismatch instead of
    /// panicking.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(PolyError::Dimension {
                expected: self.nvars(),
                found: if a.nvars() != self.nvars() {
                    a.nvars()
                } else {
                    b.nvars()
                },
            });
        }
        Ok(self.compare(a, b))
    }
}

fn lex_cmp(priority: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    for &v in priority {
        match a.0[v].cmp(&b.0[v]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(priority: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = priority.iter().map(|&v| a.0[v]).sum();
    let db: u32 = priority.iter().map(|&v| b.0[v]).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &v in priority.iter().rev() {
        match a.0[v].cmp(&b.0[v]) {
            Ordering::Equal => continue,
            // smaller exponent in the smallest differing variable wins
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}
