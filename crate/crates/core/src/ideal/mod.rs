//! Computational ideal theory over Q: Groebner bases, ideal algebra,
//! Krull dimension and certificate-checked component decompositions.

mod certificate;
mod components;
mod dimension;
mod groebner;
mod ops;

pub use certificate::{check_primality, CertificateKind, CertificateSpec, Parametrization, PrimalityCertificate};
pub use components::{split_heuristic, verify_components, CandidateOutcome, ComponentReport, SplitResult};
pub use dimension::{independent_set_dimension, krull_dim, Dimension};
pub use groebner::{buchberger, is_reduced, reduce, s_polynomial, satisfies_buchberger_criterion, GroebnerBasis};
pub use ops::{
    colon, elimination, fresh_variable, ideal_equal, ideal_membership, intersect, product,
    radical_membership, saturate, sum,
};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::exactpoly::{MonomialOrder, PolyError, PolyRing, Polynomial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdealError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    ZeroPolynomial(&'static str),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("empty candidate list")]
    EmptyCandidates,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("too many variables for the independent-set search ({0} > 128)")]
    TooManyVariables(usize),
}

/// Ideal of `Q[vars]` given by generators. Zero generators are dropped;
/// an empty generator list is the zero ideal.
///
/// Groebner bases are computed lazily and cached per monomial order behind
/// a mutex, so concurrent readers always see one consistent basis.
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring().vars() != ring.vars() {
                return Err(IdealError::Poly(PolyError::RingMismatch(format!(
                    "generator {g} is not over {:?}",
                    ring.vars().names()
                ))));
            }
            let g = g.to_ring(ring)?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Parses one generator per line (blank lines and `#` comments skipped).
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Self, IdealError> {
        Self::new(ring, ring.parse_lines(text)?)
    }

    pub fn from_strs(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self, IdealError> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![ring.one()]).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Groebner basis under the ring's own order.
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis>, IdealError> {
        let ring = self.ring.clone();
        self.groebner_in(&ring)
    }

    /// Reduced Groebner basis under the order of `ring`, which must have the
    /// same variables.
    pub fn groebner_in(&self, ring: &Arc<PolyRing>) -> Result<Arc<GroebnerBasis>, IdealError> {
        if ring.vars() != self.ring.vars() {
            return Err(IdealError::Poly(PolyError::RingMismatch(
                "Groebner basis requested over different variables".into(),
            )));
        }
        let mut cache = self.cache.lock().unwrap();
        if let Some(gb) = cache.get(ring.order()) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.generators, ring)?);
        cache.insert(ring.order().clone(), gb.clone());
        Ok(gb)
    }

    /// True when `1` lies in the ideal.
    pub fn is_unit(&self) -> Result<bool, IdealError> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        ideal_membership(f, self)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, IdealError> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same ideal, re-expressed over `ring` (same variables, possibly a
    /// different order).
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Result<Ideal, IdealError> {
        Ideal::new(ring, self.generators.clone())
    }

    /// The generators rendered one per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}
