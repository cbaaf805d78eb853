//! Polynomial systems whose zero sets are the Rota-Baxter operators of an
//! omega-Lie algebra, and their analysis.
//!
//! The generic operator is `R(e_i) = Σ_j x_ij e_j` over indeterminates
//! `x11, x12, ..., xnn` in row-major order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{OrderKind, PolyError, PolyRing, Polynomial, Rational};
use crate::ideal::{
    krull_dim, split_heuristic, verify_components, ComponentReport, Dimension, GroebnerBasis, Ideal, IdealError,
    PrimalityCertificate,
};
use crate::omega::{OmegaAlgebra, OperatorMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("unknown constraint profile '{0}' (expected b, bc, bi1 or bs)")]
    UnknownProfile(String),
    #[error("operator is {found}x{found} but the algebra has dimension {expected}")]
    Dimension { expected: usize, found: usize },
}

/// Which identities the operator must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintProfile {
    pub weight: Rational,
    pub compatible: bool,
    pub isometric: bool,
    pub square_zero: bool,
}

impl ConstraintProfile {
    /// Weight-0 Rota-Baxter operators.
    pub fn b() -> Self {
        Self::weighted(Rational::zero())
    }

    /// Rota-Baxter operators of the given weight, no further constraints.
    pub fn weighted(weight: Rational) -> Self {
        ConstraintProfile {
            weight,
            compatible: false,
            isometric: false,
            square_zero: false,
        }
    }

    /// Compatible weight-0 operators.
    pub fn bc() -> Self {
        ConstraintProfile {
            compatible: true,
            ..Self::b()
        }
    }

    /// Isometric weight-1 operators.
    pub fn bi1() -> Self {
        ConstraintProfile {
            isometric: true,
            ..Self::weighted(Rational::one())
        }
    }

    /// Compatible weight-0 operators with `R² = 0`.
    pub fn bs() -> Self {
        ConstraintProfile {
            square_zero: true,
            ..Self::bc()
        }
    }

    pub fn named() -> [(&'static str, ConstraintProfile); 4] {
        [("b", Self::b()), ("bc", Self::bc()), ("bi1", Self::bi1()), ("bs", Self::bs())]
    }

    /// Short name when the profile is one of the four named ones.
    pub fn name(&self) -> Option<&'static str> {
        Self::named().into_iter().find(|(_, p)| p == self).map(|(n, _)| n)
    }
}

impl FromStr for ConstraintProfile {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::named()
            .into_iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(s))
            .map(|(_, p)| p)
            .ok_or_else(|| SolverError::UnknownProfile(s.to_string()))
    }
}

impl fmt::Display for ConstraintProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => write!(f, "{n}"),
            None => {
                write!(f, "weight {}", self.weight)?;
                for (flag, label) in [
                    (self.compatible, "compatible"),
                    (self.isometric, "isometric"),
                    (self.square_zero, "square-zero"),
                ] {
                    if flag {
                        write!(f, ", {label}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Origin of a generated polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EquationTag {
    /// Coefficient of `e_k` in the Rota-Baxter identity on `(e_i, e_j)`.
    RotaBaxter { i: usize, j: usize, k: usize },
    Compatible { i: usize, j: usize },
    Isometric { i: usize, j: usize },
    /// Entry `(i, j)` of `R²`.
    SquareZero { i: usize, j: usize },
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EquationTag::RotaBaxter { i, j, k } => write!(f, "rb({},{},{})", i + 1, j + 1, k + 1),
            EquationTag::Compatible { i, j } => write!(f, "comp({},{})", i + 1, j + 1),
            EquationTag::Isometric { i, j } => write!(f, "iso({},{})", i + 1, j + 1),
            EquationTag::SquareZero { i, j } => write!(f, "sq({},{})", i + 1, j + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TaggedEquation {
    pub tag: EquationTag,
    pub poly: Polynomial,
}

/// The system for one algebra and profile. Duplicate and zero equations
/// are pruned; each kept equation carries the tag of its first occurrence.
#[derive(Clone, Debug)]
pub struct GeneratedSystem {
    pub ring: Arc<PolyRing>,
    pub equations: Vec<TaggedEquation>,
}

impl GeneratedSystem {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.equations.iter().map(|e| e.poly.clone()).collect())
            .expect("equations live in the system's ring")
    }
}

/// Name of the indeterminate for entry `(i, j)` (0-based).
pub fn entry_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("x{}{}", i + 1, j + 1)
    } else {
        format!("x{}_{}", i + 1, j + 1)
    }
}

/// Ring of the generic `n x n` operator, variables ranked row-major.
pub fn operator_ring(n: usize, kind: OrderKind) -> Arc<PolyRing> {
    let names: Vec<String> = (0..n).flat_map(|i| (0..n).map(move |j| entry_name(n, i, j))).collect();
    PolyRing::new(&names, kind).expect("generated names are valid and distinct")
}

fn generic_rows(ring: &Arc<PolyRing>, n: usize) -> Vec<Vec<Polynomial>> {
    (0..n).map(|i| (0..n).map(|j| ring.var_at(i * n + j)).collect()).collect()
}

fn sym_bracket(l: &OmegaAlgebra, ring: &Arc<PolyRing>, u: &[Polynomial], v: &[Polynomial]) -> Vec<Polynomial> {
    let n = l.dim();
    let mut out = vec![ring.zero(); n];
    for (a, ua) in u.iter().enumerate() {
        if ua.is_zero() {
            continue;
        }
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() || l.bracket_basis(a, b).iter().all(Zero::is_zero) {
                continue;
            }
            let uv = ua * vb;
            for (k, o) in out.iter_mut().enumerate() {
                let c = l.structure_constant(a, b, k);
                if !c.is_zero() {
                    *o = &*o + &uv.scale(c);
                }
            }
        }
    }
    out
}

fn sym_omega(l: &OmegaAlgebra, ring: &Arc<PolyRing>, u: &[Polynomial], v: &[Polynomial]) -> Polynomial {
    let mut acc = ring.zero();
    for (a, ua) in u.iter().enumerate() {
        for (b, vb) in v.iter().enumerate() {
            let w = l.omega_basis(a, b);
            if !w.is_zero() && !ua.is_zero() && !vb.is_zero() {
                acc = &acc + &(ua * vb).scale(w);
            }
        }
    }
    acc
}

/// `R(w)` for a polynomial coordinate vector `w`.
fn sym_apply(rows: &[Vec<Polynomial>], ring: &Arc<PolyRing>, w: &[Polynomial]) -> Vec<Polynomial> {
    let n = rows.len();
    let mut out = vec![ring.zero(); n];
    for (a, wa) in w.iter().enumerate() {
        if wa.is_zero() {
            continue;
        }
        for (k, o) in out.iter_mut().enumerate() {
            *o = &*o + &(wa * &rows[a][k]);
        }
    }
    out
}

fn constant_vector(ring: &Arc<PolyRing>, v: &[Rational]) -> Vec<Polynomial> {
    v.iter().map(|c| ring.constant(c.clone())).collect()
}

/// Components of `[Re_i, Re_j] - R([Re_i, e_j] + [e_i, Re_j] + λ[e_i, e_j])`
/// for the generic operator over `ring`.
pub fn rb_polynomials(l: &OmegaAlgebra, ring: &Arc<PolyRing>, i: usize, j: usize, weight: &Rational) -> Vec<Polynomial> {
    let n = l.dim();
    let rows = generic_rows(ring, n);
    let ei = constant_vector(ring, &l.basis_vector(i));
    let ej = constant_vector(ring, &l.basis_vector(j));
    let lhs = sym_bracket(l, ring, &rows[i], &rows[j]);
    let a = sym_bracket(l, ring, &rows[i], &ej);
    let b = sym_bracket(l, ring, &ei, &rows[j]);
    let c = l.bracket_basis(i, j);
    let inner: Vec<Polynomial> = (0..n)
        .map(|k| &(&a[k] + &b[k]) + &ring.constant(weight * &c[k]))
        .collect();
    let rhs = sym_apply(&rows, ring, &inner);
    lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect()
}

/// Builds the polynomial system of `profile` over the generic operator.
/// Every constraint is bilinear and skew (or, for `R²`, entrywise), so
/// basis pairs `i < j` suffice.
pub fn generate_system(l: &OmegaAlgebra, profile: &ConstraintProfile, kind: OrderKind) -> GeneratedSystem {
    let n = l.dim();
    let ring = operator_ring(n, kind);
    let rows = generic_rows(&ring, n);
    let mut raw: Vec<(EquationTag, Polynomial)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (k, p) in rb_polynomials(l, &ring, i, j, &profile.weight).into_iter().enumerate() {
                raw.push((EquationTag::RotaBaxter { i, j, k }, p));
            }
        }
    }
    if profile.compatible {
        for i in 0..n {
            for j in i + 1..n {
                let ei = constant_vector(&ring, &l.basis_vector(i));
                let ej = constant_vector(&ring, &l.basis_vector(j));
                let p = &sym_omega(l, &ring, &rows[i], &ej) + &sym_omega(l, &ring, &ei, &rows[j]);
                raw.push((EquationTag::Compatible { i, j }, p));
            }
        }
    }
    if profile.isometric {
        for i in 0..n {
            for j in i + 1..n {
                let p = &sym_omega(l, &ring, &rows[i], &rows[j]) - &ring.constant(l.omega_basis(i, j).clone());
                raw.push((EquationTag::Isometric { i, j }, p));
            }
        }
    }
    if profile.square_zero {
        for i in 0..n {
            for j in 0..n {
                let mut p = ring.zero();
                for k in 0..n {
                    p = &p + &(&rows[i][k] * &rows[k][j]);
                }
                raw.push((EquationTag::SquareZero { i, j }, p));
            }
        }
    }

    let mut equations: Vec<TaggedEquation> = Vec::new();
    for (tag, p) in raw {
        if p.is_zero() {
            continue;
        }
        let poly = p.primitive();
        if equations.iter().any(|e| e.poly == poly) {
            continue;
        }
        equations.push(TaggedEquation { tag, poly });
    }
    GeneratedSystem { ring, equations }
}

/// Entries of `r` as a point of the operator ring, row-major.
pub fn operator_point(r: &OperatorMatrix) -> Vec<Rational> {
    (0..r.rows()).flat_map(|i| r.row(i).to_vec()).collect()
}

/// Does `r` satisfy every equation of the profile?
pub fn membership_check(l: &OmegaAlgebra, profile: &ConstraintProfile, r: &OperatorMatrix) -> Result<bool, SolverError> {
    let system = generate_system(l, profile, OrderKind::Grevlex);
    point_on_system(&system, r, l.dim())
}

/// As [`membership_check`], reusing an already generated system.
pub fn point_on_system(system: &GeneratedSystem, r: &OperatorMatrix, n: usize) -> Result<bool, SolverError> {
    if r.rows() != n || r.cols() != n {
        return Err(SolverError::Dimension {
            expected: n,
            found: r.rows(),
        });
    }
    let point = operator_point(r);
    for e in &system.equations {
        if !e.poly.evaluate(&point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A candidate component over the operator ring.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    pub ideal: Ideal,
    pub certificate: Option<PrimalityCertificate>,
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub order: OrderKind,
    /// Depth for the splitting heuristic when no candidates are given;
    /// `None` skips it.
    pub split_depth: Option<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            order: OrderKind::Grevlex,
            split_depth: None,
        }
    }
}

/// Result of [`analyze_variety`].
#[derive(Clone, Debug)]
pub struct VarietyReport {
    pub system: GeneratedSystem,
    pub ideal: Ideal,
    pub groebner: Arc<GroebnerBasis>,
    pub dimension: Dimension,
    pub components: Option<ComponentReport>,
    /// Advisory covering from the splitting heuristic, when it ran.
    pub split: Option<(Vec<Ideal>, bool)>,
}

impl VarietyReport {
    /// Dimension equals the maximum component dimension whenever the
    /// decomposition verified.
    pub fn consistent(&self) -> bool {
        match &self.components {
            Some(c) if c.verified() => c.dimension == self.dimension,
            _ => true,
        }
    }
}

pub fn analyze_variety(
    l: &OmegaAlgebra,
    profile: &ConstraintProfile,
    candidates: Option<&[Candidate]>,
    options: &AnalysisOptions,
) -> Result<VarietyReport, SolverError> {
    let system = generate_system(l, profile, options.order);
    let ideal = system.ideal();
    let groebner = ideal.groebner()?;
    let dimension = krull_dim(&ideal)?;
    let components = match candidates {
        Some(c) if !c.is_empty() => {
            let pairs: Vec<(Ideal, Option<PrimalityCertificate>)> =
                c.iter().map(|c| (c.ideal.clone(), c.certificate.clone())).collect();
            Some(verify_components(&ideal, &pairs)?)
        }
        _ => None,
    };
    let split = match (&components, options.split_depth) {
        (None, Some(depth)) => {
            let s = split_heuristic(&ideal, depth)?;
            Some((s.pieces, s.partial))
        }
        _ => None,
    };
    Ok(VarietyReport {
        system,
        ideal,
        groebner,
        dimension,
        components,
        split,
    })
}
