use num_traits::Zero;
use serde::Serialize;

use crate::exactpoly::Rational;

use super::{OmegaAlgebra, OmegaError, OperatorMatrix};

/// Properties of a concrete operator, each checked exactly on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapClassification {
    pub weight: String,
    pub is_rota_baxter: bool,
    pub is_compatible: bool,
    pub is_isometric: bool,
    pub is_derivation: bool,
    pub is_automorphism: bool,
    pub is_square_zero: bool,
    pub is_invertible: bool,
}

fn check_dims(l: &OmegaAlgebra, r: &OperatorMatrix) -> Result<(), OmegaError> {
    if r.rows() != l.dim() || r.cols() != l.dim() {
        return Err(OmegaError::Dimension {
            expected: l.dim(),
            found: r.rows().max(r.cols()),
        });
    }
    Ok(())
}

fn all_pairs(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> bool {
    (0..n).all(|i| (i + 1..n).all(|j| f(i, j)))
}

/// `[Rx, Ry] = R([Rx, y] + [x, Ry] + λ[x, y])`. Both sides are skew in
/// `(x, y)`, so pairs `i < j` suffice.
pub fn is_rota_baxter(l: &OmegaAlgebra, r: &OperatorMatrix, weight: &Rational) -> bool {
    let n = l.dim();
    all_pairs(n, |i, j| {
        let (ri, rj) = (r.row(i), r.row(j));
        let lhs = l.bracket(ri, rj);
        let (x, y) = (l.basis_vector(i), l.basis_vector(j));
        let a = l.bracket(ri, &y);
        let b = l.bracket(&x, rj);
        let c = l.bracket_basis(i, j);
        let inner: Vec<Rational> = (0..n).map(|k| &a[k] + &b[k] + weight * &c[k]).collect();
        lhs == r.apply(&inner)
    })
}

/// `ω(Rx, y) + ω(x, Ry) = 0`.
pub fn is_compatible(l: &OmegaAlgebra, r: &OperatorMatrix) -> bool {
    let n = l.dim();
    all_pairs(n, |i, j| {
        let (x, y) = (l.basis_vector(i), l.basis_vector(j));
        (l.omega(r.row(i), &y) + l.omega(&x, r.row(j))).is_zero()
    })
}

/// `ω(Rx, Ry) = ω(x, y)`.
pub fn is_isometric(l: &OmegaAlgebra, r: &OperatorMatrix) -> bool {
    all_pairs(l.dim(), |i, j| l.omega(r.row(i), r.row(j)) == *l.omega_basis(i, j))
}

/// `R[x, y] = [Rx, y] + [x, Ry]` (bracket only).
pub fn is_derivation(l: &OmegaAlgebra, r: &OperatorMatrix) -> bool {
    all_pairs(l.dim(), |i, j| {
        let lhs = r.apply(l.bracket_basis(i, j));
        let a = l.bracket(r.row(i), &l.basis_vector(j));
        let b = l.bracket(&l.basis_vector(i), r.row(j));
        lhs.iter().zip(a.iter().zip(&b)).all(|(s, (p, q))| *s == p + q)
    })
}

/// Invertible with `R[x, y] = [Rx, Ry]` (bracket only).
pub fn is_automorphism(l: &OmegaAlgebra, r: &OperatorMatrix) -> bool {
    r.is_invertible()
        && all_pairs(l.dim(), |i, j| r.apply(l.bracket_basis(i, j)) == l.bracket(r.row(i), r.row(j)))
}

pub fn classify_map(l: &OmegaAlgebra, r: &OperatorMatrix, weight: &Rational) -> Result<MapClassification, OmegaError> {
    check_dims(l, r)?;
    Ok(MapClassification {
        weight: weight.to_string(),
        is_rota_baxter: is_rota_baxter(l, r, weight),
        is_compatible: is_compatible(l, r),
        is_isometric: is_isometric(l, r),
        is_derivation: is_derivation(l, r),
        is_automorphism: is_automorphism(l, r),
        is_square_zero: r.power(2)?.is_zero(),
        is_invertible: r.is_invertible(),
    })
}

/// `R ↦ R⁻¹`, exchanging invertible weight-0 Rota-Baxter operators that
/// are automorphisms with derivations that are automorphisms.
pub fn inverse_correspondence(l: &OmegaAlgebra, r: &OperatorMatrix) -> Result<OperatorMatrix, OmegaError> {
    check_dims(l, r)?;
    r.inverse()
}
