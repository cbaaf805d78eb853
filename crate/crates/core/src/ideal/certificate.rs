//! Primality certificates.
//!
//! A certificate names designated variables that some generators of `p`
//! solve for, each generator being of the form `a * v + h` with `a` a
//! divisor of some power `f^k` of the pivot `f` and `h` free of `v` and of
//! designated variables not yet solved. Substituting the solutions defines a ring map
//! `phi` from `Q[x]` into `Q[free][1/f]`, a domain. If every generator of
//! `p` maps to zero then `p ⊆ ker phi`; if moreover `p : f = p` then any
//! `q ∈ ker phi` has `f^N q ∈ p` for some `N`, so `p = ker phi` is prime of
//! dimension equal to the number of free variables. With pivot `1` the
//! colon condition is vacuous.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{Monomial, PolyError, PolyRing, Polynomial, Rational};

use super::{colon, Ideal, IdealError};

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateKind {
    Linear,
    Pivot(Polynomial),
}

/// Serialized form: designated variable names and an optional pivot.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSpec {
    pub solve: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimalityCertificate {
    pub kind: CertificateKind,
    pub solve: Vec<usize>,
}

impl PrimalityCertificate {
    pub fn linear(ring: &PolyRing, solve: &[&str]) -> Result<Self, IdealError> {
        Ok(PrimalityCertificate {
            kind: CertificateKind::Linear,
            solve: indices(ring, solve.iter().copied())?,
        })
    }

    pub fn pivot(ring: &Arc<PolyRing>, solve: &[&str], pivot: &str) -> Result<Self, IdealError> {
        Ok(PrimalityCertificate {
            kind: CertificateKind::Pivot(ring.parse(pivot)?),
            solve: indices(ring, solve.iter().copied())?,
        })
    }

    pub fn from_spec(ring: &Arc<PolyRing>, spec: &CertificateSpec) -> Result<Self, IdealError> {
        let solve = indices(ring, spec.solve.iter().map(String::as_str))?;
        let kind = match &spec.pivot {
            None => CertificateKind::Linear,
            Some(p) => CertificateKind::Pivot(ring.parse(p)?),
        };
        Ok(PrimalityCertificate { kind, solve })
    }

    pub fn to_spec(&self, ring: &PolyRing) -> CertificateSpec {
        CertificateSpec {
            solve: self.solve.iter().map(|&i| ring.vars().name(i).to_string()).collect(),
            pivot: match &self.kind {
                CertificateKind::Linear => None,
                CertificateKind::Pivot(f) => Some(f.to_string()),
            },
        }
    }
}

fn indices<'a>(ring: &PolyRing, names: impl Iterator<Item = &'a str>) -> Result<Vec<usize>, IdealError> {
    let mut out = Vec::new();
    for n in names {
        let i = ring
            .vars()
            .index_of(n)
            .ok_or_else(|| PolyError::UnknownVariable(n.to_string()))?;
        if out.contains(&i) {
            return Err(IdealError::MalformedCertificate(format!("variable {n} designated twice")));
        }
        out.push(i);
    }
    Ok(out)
}

/// The map `phi` of a verified certificate. Each designated variable
/// `v` maps to `numerator / f^exponent` with the numerator in `Q[free]`.
#[derive(Clone, Debug)]
pub struct Parametrization {
    ring: Arc<PolyRing>,
    free: Vec<usize>,
    pivot: Polynomial,
    images: Vec<(usize, Polynomial, u32)>,
}

impl Parametrization {
    pub fn free_variables(&self) -> &[usize] {
        &self.free
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn pivot(&self) -> &Polynomial {
        &self.pivot
    }

    /// `(N, E)` with `phi(q) = N / f^E`.
    pub fn image(&self, q: &Polynomial) -> Result<(Polynomial, u32), IdealError> {
        let q = q.to_ring(&self.ring)?;
        let exp_of = |m: &Monomial| -> u32 {
            self.images
                .iter()
                .map(|(v, _, e)| m.exponent(*v) * e)
                .sum()
        };
        let total = q.terms().iter().map(|(_, m)| exp_of(m)).max().unwrap_or(0);
        let mut acc = self.ring.zero();
        for (c, m) in q.terms() {
            let mut free_part = m.exponents().to_vec();
            let mut term = self.ring.one();
            for (v, num, _) in &self.images {
                let a = m.exponent(*v);
                free_part[*v] = 0;
                if a > 0 {
                    term = &term * &num.pow(a);
                }
            }
            let mono = self.ring.monomial(c.clone(), Monomial::from_exponents(free_part));
            term = &term * &mono;
            term = &term * &self.pivot.pow(total - exp_of(m));
            acc = &acc + &term;
        }
        Ok((acc, total))
    }

    /// A rational point of the variety: free variables drawn at random
    /// (avoiding the zero set of the pivot), the others from `phi`.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Rational>, IdealError> {
        let n = self.ring.nvars();
        for _ in 0..1000 {
            let mut point = vec![Rational::zero(); n];
            for &v in &self.free {
                point[v] = random_rational(rng);
            }
            let f = self.pivot.evaluate(&point)?;
            if f.is_zero() {
                continue;
            }
            let mut full = point.clone();
            for (v, num, e) in &self.images {
                let mut denom = Rational::one();
                for _ in 0..*e {
                    denom *= &f;
                }
                full[*v] = num.evaluate(&point)? / denom;
            }
            return Ok(full);
        }
        Err(IdealError::Internal("could not avoid the pivot's zero set".into()))
    }
}

pub(crate) fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    Rational::new(n.into(), d.into())
}

/// Verifies `cert` against the generators of `p`. Returns the resulting
/// parametrization, or `CertificateRejected` naming the failed condition.
pub fn check_primality(p: &Ideal, cert: &PrimalityCertificate) -> Result<Parametrization, IdealError> {
    let ring = p.ring().clone();
    let reject = |msg: String| Err(IdealError::CertificateRejected(msg));
    let pivot = match &cert.kind {
        CertificateKind::Linear => ring.one(),
        CertificateKind::Pivot(f) => f.to_ring(&ring)?,
    };
    if pivot.is_zero() {
        return reject("pivot is zero".into());
    }
    let designated: BTreeSet<usize> = cert.solve.iter().copied().collect();
    if pivot.variables().iter().any(|v| designated.contains(v)) {
        return reject(format!("pivot {pivot} involves a designated variable"));
    }

    let mut param = Parametrization {
        ring: ring.clone(),
        free: (0..ring.nvars()).filter(|v| !designated.contains(v)).collect(),
        pivot: pivot.clone(),
        images: Vec::new(),
    };
    let mut unsolved: Vec<usize> = cert.solve.clone();
    while !unsolved.is_empty() {
        let solved_now = unsolved.iter().position(|&v| {
            p.generators()
                .iter()
                .find_map(|g| solve_for(g, v, &unsolved, &pivot))
                .map(|(m, k, h)| {
                    let (num, e) = param.image(&h).expect("same ring");
                    param.images.push((v, -&(&num * &m), e + k));
                })
                .is_some()
        });
        match solved_now {
            Some(pos) => {
                unsolved.remove(pos);
            }
            None => {
                let names: Vec<&str> = unsolved.iter().map(|&v| ring.vars().name(v)).collect();
                return reject(format!("no generator solves for {}", names.join(", ")));
            }
        }
    }

    for g in p.generators() {
        let (num, _) = param.image(g)?;
        if !num.is_zero() {
            return reject(format!("generator {g} does not vanish on the parametrization"));
        }
    }
    if !pivot.is_constant() {
        let c = colon(p, &pivot)?;
        if !p.contains_ideal(&c)? {
            return reject(format!("ideal is not saturated with respect to {pivot}"));
        }
    }
    Ok(param)
}

/// If `g = a v + h` with `h` free of `v` and of every other unsolved
/// variable, and `a` divides `f^k`, returns `(f^k / a, k, h)` so that
/// `v = -h (f^k / a) / f^k`.
fn solve_for(g: &Polynomial, v: usize, unsolved: &[usize], f: &Polynomial) -> Option<(Polynomial, u32, Polynomial)> {
    if g.degree_in(v) != 1 {
        return None;
    }
    let ring = g.ring();
    let mut coeff = Vec::new();
    let mut rest = Vec::new();
    for (c, m) in g.terms() {
        if m.exponent(v) == 1 {
            let mut e = m.exponents().to_vec();
            e[v] = 0;
            coeff.push((c.clone(), Monomial::from_exponents(e)));
        } else {
            rest.push((c.clone(), m.clone()));
        }
    }
    let a = Polynomial::from_terms(ring, coeff);
    let h = Polynomial::from_terms(ring, rest);
    if h.variables().iter().any(|u| unsolved.contains(u)) {
        return None;
    }
    if let Some(c) = a.constant_value() {
        return Some((ring.constant(c.recip()), 0, h));
    }
    if f.is_constant() {
        return None;
    }
    // a | f^k forces k <= deg a
    let mut power = ring.one();
    for k in 1..=a.total_degree() {
        power = &power * f;
        if let Ok(Some(m)) = power.exact_div(&a) {
            return Some((m, k, h));
        }
    }
    None
}
