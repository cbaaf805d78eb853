use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;

use crate::exactpoly::{Monomial, PolyRing, Polynomial};

use super::IdealError;

/// Normal form of `f` with respect to `basis`: `f - r` lies in the ideal
/// generated by `basis` and no monomial of `r` is divisible by a leading
/// monomial of `basis`. When several basis elements divide a term, the
/// first one in list order is used.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((c, m)) = p.leading_term().cloned() {
        let divisor = basis.iter().find_map(|g| {
            let (gc, gm) = g.leading_term()?;
            gm.quotient_of(&m).map(|q| (g, gc, q))
        });
        match divisor {
            Some((g, gc, q)) => p = p.sub_scaled(&(&c / gc), &q, g),
            None => {
                p.pop_leading();
                rem.push((c, m));
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, rem)
}

/// `(LC(g) t / LM(f)) f - (LC(f) t / LM(g)) g` with `t = lcm(LM(f), LM(g))`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, IdealError> {
    f.same_ring(g)?;
    let ((fc, fm), (gc, gm)) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(IdealError::ZeroPolynomial("s-polynomial of a zero polynomial")),
    };
    let t = fm.lcm(gm);
    let left = f.mul_term(gc, &fm.quotient_of(&t).unwrap());
    let right = g.mul_term(fc, &gm.quotient_of(&t).unwrap());
    Ok(&left - &right)
}

/// Reduced Groebner basis under a fixed order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, IdealError> {
        let f = f.to_ring(&self.ring)?;
        Ok(reduce(&f, &self.elements))
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair(usize, usize);

/// Buchberger's algorithm with the normal selection strategy (smallest
/// lcm first), the coprime leading monomial criterion and the chain
/// criterion. Returns the reduced basis, sorted by decreasing leading
/// monomial.
pub fn buchberger(gens: &[Polynomial], ring: &Arc<PolyRing>) -> Result<GroebnerBasis, IdealError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.to_ring(ring)?;
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                elements: vec![ring.one()],
            });
        }
        basis.push(g.monic());
    }
    let order = ring.order().clone();
    let lm = |b: &[Polynomial], i: usize| b[i].leading_monomial().unwrap().clone();

    let mut pending: BTreeSet<Pair> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert(Pair(i, j));
        }
    }

    while !pending.is_empty() {
        // normal strategy: least lcm under the active order
        let &pair = pending
            .iter()
            .min_by(|a, b| {
                let la = lm(&basis, a.0).lcm(&lm(&basis, a.1));
                let lb = lm(&basis, b.0).lcm(&lm(&basis, b.1));
                order.compare(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&pair);
        let Pair(i, j) = pair;
        let (mi, mj) = (lm(&basis, i), lm(&basis, j));
        if mi.is_coprime(&mj) {
            continue;
        }
        let t = mi.lcm(&mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis, k).divides(&t)
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                elements: vec![ring.one()],
            });
        }
        let n = basis.len();
        basis.push(r.monic());
        for k in 0..n {
            pending.insert(Pair(k, n));
        }
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements: interreduce(basis),
    })
}

fn ordered(a: usize, b: usize) -> Pair {
    if a < b {
        Pair(a, b)
    } else {
        Pair(b, a)
    }
}

/// Minimalizes and fully reduces a Groebner basis.
fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != i && hm.divides(m) && (hm != m || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (c, m) = minimal[i].leading_term().unwrap().clone();
        let mut tail = minimal[i].clone();
        tail.pop_leading();
        let tail = reduce(&tail, &others);
        let head = minimal[i].ring().monomial(c, m);
        reduced.push((&head + &tail).monic());
    }
    let order = reduced
        .first()
        .map(|p| p.ring().order().clone());
    if let Some(order) = order {
        reduced.sort_by(|a, b| {
            order
                .compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
        });
    }
    debug_assert!(reduced.iter().all(|g| g.leading_coefficient().is_some_and(|c| c.is_one())));
    reduced
}

/// Checks Buchberger's criterion: every S-polynomial of two elements
/// reduces to zero against the set.
pub fn satisfies_buchberger_criterion(set: &[Polynomial]) -> Result<bool, IdealError> {
    for j in 0..set.len() {
        for i in 0..j {
            if set[i].is_zero() || set[j].is_zero() {
                continue;
            }
            let s = s_polynomial(&set[i], &set[j])?;
            if !reduce(&s, set).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reduced-basis test: monic, and no monomial of an element divisible by
/// the leading monomial of another.
pub fn is_reduced(set: &[Polynomial]) -> bool {
    set.iter().enumerate().all(|(i, g)| {
        g.leading_coefficient().is_some_and(|c| c.is_one())
            && set.iter().enumerate().all(|(k, h)| {
                k == i
                    || h
                        .leading_monomial()
                        .is_some_and(|hm| g.terms().iter().all(|(_, m)| !hm.divides(m)))
            })
    })
}
