//! Certified irreducible decompositions.
//!
//! Given `I` and candidate primes `p_1, ..., p_k`, the candidates are
//! exactly the minimal primes of `I` when
//!
//! 1. `I ⊆ p_i` for every `i`,
//! 2. every `p_i` is prime (checked through a [`PrimalityCertificate`]),
//! 3. `p_1 ∩ ... ∩ p_k ⊆ √I`,
//! 4. `p_i ⊄ p_j` for `i ≠ j`.
//!
//! Conditions 1 and 3 give `√I = ∩ p_i`, and an irredundant intersection
//! of primes lists exactly the minimal primes.

use serde::Serialize;

use super::{
    check_primality, intersect, krull_dim, radical_membership, saturate, sum, Dimension, Ideal,
    IdealError, PrimalityCertificate,
};

#[derive(Clone, Debug, Serialize)]
pub struct CandidateOutcome {
    pub contains_ideal: bool,
    /// Dimension established by the certificate, or why it failed.
    pub prime: Result<usize, String>,
    pub dimension: Dimension,
}

impl CandidateOutcome {
    pub fn ok(&self) -> bool {
        self.contains_ideal
            && matches!(self.prime, Ok(d) if Dimension::Dim(d) == self.dimension)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub candidates: Vec<CandidateOutcome>,
    /// Generators of the intersection that fail radical membership.
    pub uncovered: Vec<String>,
    /// Pairs `(i, j)` with `p_j ⊆ p_i`, making `p_i` redundant.
    pub redundant: Vec<(usize, usize)>,
    pub dimension: Dimension,
}

impl ComponentReport {
    pub fn verified(&self) -> bool {
        self.candidates.iter().all(CandidateOutcome::ok)
            && self.uncovered.is_empty()
            && self.redundant.is_empty()
    }

    /// Human-readable reasons for a failed verification.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.candidates.iter().enumerate() {
            if !c.contains_ideal {
                out.push(format!("component {i} does not contain the ideal"));
            }
            match &c.prime {
                Err(e) => out.push(format!("component {i}: {e}")),
                Ok(d) if Dimension::Dim(*d) != c.dimension => out.push(format!(
                    "component {i}: certificate dimension {d} but Krull dimension {}",
                    c.dimension
                )),
                Ok(_) => {}
            }
        }
        for g in &self.uncovered {
            out.push(format!("{g} vanishes on all components but not on the variety"));
        }
        for (i, j) in &self.redundant {
            out.push(format!("component {j} is contained in component {i}"));
        }
        out
    }
}

/// Checks that `candidates` are the irreducible components of `V(ideal)`.
pub fn verify_components(
    ideal: &Ideal,
    candidates: &[(Ideal, Option<PrimalityCertificate>)],
) -> Result<ComponentReport, IdealError> {
    if candidates.is_empty() {
        return Err(IdealError::EmptyCandidates);
    }
    let ring = ideal.ring();
    let comps: Vec<Ideal> = candidates
        .iter()
        .map(|(p, _)| p.to_ring(ring))
        .collect::<Result<_, _>>()?;

    let mut outcomes = Vec::with_capacity(comps.len());
    for (p, (_, cert)) in comps.iter().zip(candidates) {
        let prime = match cert {
            None => Err("no primality certificate".to_string()),
            Some(c) => match check_primality(p, c) {
                Ok(param) => Ok(param.dimension()),
                Err(IdealError::CertificateRejected(m)) => Err(m),
                Err(e) => return Err(e),
            },
        };
        outcomes.push(CandidateOutcome {
            contains_ideal: p.contains_ideal(ideal)?,
            prime,
            dimension: krull_dim(p)?,
        });
    }

    let mut meet = comps[0].clone();
    for p in &comps[1..] {
        meet = intersect(&meet, p)?;
    }
    let mut uncovered = Vec::new();
    for g in meet.groebner()?.elements() {
        if !radical_membership(g, ideal)? {
            uncovered.push(g.to_string());
        }
    }

    let mut redundant = Vec::new();
    for (i, pi) in comps.iter().enumerate() {
        for (j, pj) in comps.iter().enumerate() {
            if i != j && pi.contains_ideal(pj)? {
                redundant.push((i, j));
            }
        }
    }

    let dimension = outcomes
        .iter()
        .map(|o| o.dimension)
        .max()
        .unwrap_or(Dimension::Empty);
    Ok(ComponentReport {
        candidates: outcomes,
        uncovered,
        redundant,
        dimension,
    })
}

/// Output of [`split_heuristic`]: ideals whose varieties cover `V(I)`.
/// They are not certified prime. `partial` is set when the depth cap
/// stopped a branch that could still have been split.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub pieces: Vec<Ideal>,
    pub partial: bool,
}

/// Splits `V(I)` along variables: a Groebner basis element with a
/// monomial factor `x` gives `I + <x>` and `I : x^∞`; otherwise any
/// variable whose saturation enlarges the ideal is used. Unit pieces are
/// dropped, and so are pieces containing another piece.
pub fn split_heuristic(ideal: &Ideal, max_depth: usize) -> Result<SplitResult, IdealError> {
    let mut leaves = Vec::new();
    let mut partial = false;
    split(ideal.clone(), max_depth, &mut leaves, &mut partial)?;

    let mut kept: Vec<Ideal> = Vec::new();
    for (i, p) in leaves.iter().enumerate() {
        let mut drop = false;
        for (j, q) in leaves.iter().enumerate() {
            if i == j {
                continue;
            }
            // q ⊆ p means V(p) ⊆ V(q); on ties keep the first
            if p.contains_ideal(q)? && (!q.contains_ideal(p)? || j < i) {
                drop = true;
                break;
            }
        }
        if !drop {
            kept.push(p.clone());
        }
    }
    Ok(SplitResult { pieces: kept, partial })
}

fn split(j: Ideal, depth: usize, out: &mut Vec<Ideal>, partial: &mut bool) -> Result<(), IdealError> {
    let gb = j.groebner()?;
    if gb.is_unit() {
        return Ok(());
    }
    let ring = j.ring().clone();
    let reduced = Ideal::new(&ring, gb.elements().to_vec())?;

    // a variable dividing every term of some basis element, unless that
    // element is the variable itself
    let factor_var = gb.elements().iter().find_map(|g| {
        let mut common = g.terms().first()?.1.clone();
        for (_, m) in g.terms() {
            common = common.gcd(m);
        }
        let v = common.exponents().iter().position(|&e| e > 0)?;
        (*g != ring.var_at(v)).then_some(v)
    });

    let mut choice = None;
    if let Some(v) = factor_var {
        let x = ring.var_at(v);
        choice = Some((x.clone(), saturate(&reduced, &x)?));
    } else {
        for v in 0..ring.nvars() {
            let x = ring.var_at(v);
            if reduced.contains(&x)? {
                continue;
            }
            let sat = saturate(&reduced, &x)?;
            if !reduced.contains_ideal(&sat)? {
                choice = Some((x, sat));
                break;
            }
        }
    }

    match choice {
        None => out.push(reduced),
        Some(_) if depth == 0 => {
            *partial = true;
            out.push(reduced);
        }
        Some((x, sat)) => {
            let with_x = sum(&reduced, &Ideal::new(&ring, vec![x])?)?;
            split(with_x, depth - 1, out, partial)?;
            split(sat, depth - 1, out, partial)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{OrderKind, PolyRing};
    use crate::ideal::ideal_equal;
    use std::sync::Arc;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], OrderKind::Grevlex).unwrap()
    }

    fn lin(r: &Arc<PolyRing>, gens: &[&str], solve: &[&str]) -> (Ideal, Option<PrimalityCertificate>) {
        (
            Ideal::from_strs(r, gens).unwrap(),
            Some(PrimalityCertificate::linear(r, solve).unwrap()),
        )
    }

    #[test]
    fn union_of_plane_and_line() {
        let r = ring();
        let i = Ideal::from_strs(&r, &["x*z", "y*z"]).unwrap();
        let cands = [lin(&r, &["z"], &["z"]), lin(&r, &["x", "y"], &["x", "y"])];
        let rep = verify_components(&i, &cands).unwrap();
        assert!(rep.verified(), "{:?}", rep.failures());
        assert_eq!(rep.dimension, Dimension::Dim(2));
    }

    #[test]
    fn missing_component_detected() {
        let r = ring();
        let i = Ideal::from_strs(&r, &["x*z", "y*z"]).unwrap();
        let rep = verify_components(&i, &[lin(&r, &["z"], &["z"])]).unwrap();
        assert!(!rep.verified());
        assert!(!rep.uncovered.is_empty());
    }

    #[test]
    fn redundant_component_detected() {
        let r = ring();
        let i = Ideal::from_strs(&r, &["x*z", "y*z"]).unwrap();
        let cands = [
            lin(&r, &["z"], &["z"]),
            lin(&r, &["x", "y"], &["x", "y"]),
            lin(&r, &["x", "y", "z"], &["x", "y", "z"]),
        ];
        let rep = verify_components(&i, &cands).unwrap();
        assert_eq!(rep.redundant, vec![(2, 0), (2, 1)]);
    }

    #[test]
    fn non_radical_ideal_has_reduced_components() {
        let r = ring();
        let i = Ideal::from_strs(&r, &["x^2*z", "y*z^3"]).unwrap();
        let cands = [lin(&r, &["z"], &["z"]), lin(&r, &["x", "y"], &["x", "y"])];
        assert!(verify_components(&i, &cands).unwrap().verified());
    }

    #[test]
    fn split_recovers_components() {
        let r = ring();
        let i = Ideal::from_strs(&r, &["x*z", "y*z"]).unwrap();
        let res = split_heuristic(&i, 8).unwrap();
        assert!(!res.partial);
        assert_eq!(res.pieces.len(), 2);
        let z = Ideal::from_strs(&r, &["z"]).unwrap();
        let xy = Ideal::from_strs(&r, &["x", "y"]).unwrap();
        assert!(res.pieces.iter().any(|p| ideal_equal(p, &z).unwrap()));
        assert!(res.pieces.iter().any(|p| ideal_equal(p, &xy).unwrap()));
    }

    #[test]
    fn split_depth_cap_sets_partial() {
        let r = ring();
        let i = Ideal::from_strs(&r, &["x*y*z"]).unwrap();
        let res = split_heuristic(&i, 0).unwrap();
        assert!(res.partial);
        assert_eq!(res.pieces.len(), 1);
        let res = split_heuristic(&i, 8).unwrap();
        assert_eq!(res.pieces.len(), 3);
    }
}
