use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactpoly::Rational;
use crate::omega::{format_combination, is_compatible, is_rota_baxter, OmegaAlgebra, OperatorMatrix, Subspace};

use super::deform::deform_unchecked;
use super::{check_square, require, ConstructionError};

/// Skew bracket `[e_i, e_j] = Σ_k table[i][j][k] e_k` with twist map `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieAlgebra {
    names: Vec<String>,
    table: Vec<Vec<Vec<Rational>>>,
    twist: OperatorMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomJacobiFailure {
    pub triple: (usize, usize, usize),
    pub residual: Vec<String>,
}

impl HomLieAlgebra {
    pub fn new(names: Vec<String>, table: Vec<Vec<Vec<Rational>>>, twist: OperatorMatrix) -> Self {
        HomLieAlgebra { names, table, twist }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn twist(&self) -> &OperatorMatrix {
        &self.twist
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if ui.is_zero() || vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &c * &self.table[i][j][k];
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = num_traits::One::one();
        v
    }

    /// Triples `i < j < k` violating `[[x,y],α(z)] + [[y,z],α(x)] + [[z,x],α(y)] = 0`,
    /// plus any pair where the bracket is not skew (reported as `(i, j, j)`).
    pub fn hom_jacobi_failures(&self) -> Vec<HomJacobiFailure> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let skew = (0..n).all(|k| self.table[i][j][k] == -self.table[j][i][k].clone());
                if !skew {
                    out.push(HomJacobiFailure {
                        triple: (i, j, j),
                        residual: vec!["bracket not skew".into()],
                    });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let mut r = vec![Rational::zero(); n];
                    for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
                        let t = self.bracket(&self.bracket(a, b), &self.twist.apply(c));
                        for m in 0..n {
                            r[m] += &t[m];
                        }
                    }
                    if r.iter().any(|v| !v.is_zero()) {
                        out.push(HomJacobiFailure {
                            triple: (i, j, k),
                            residual: r.iter().map(ToString::to_string).collect(),
                        });
                    }
                }
            }
        }
        out
    }

    /// `[U, V]` as a subspace.
    pub fn bracket_span(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                vecs.push(self.bracket(a, b));
            }
        }
        Subspace::span(self.dim(), vecs)
    }

    /// Nonzero brackets `[e_i, e_j]`, `i < j`, one per line.
    pub fn table_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if self.table[i][j].iter().any(|c| !c.is_zero()) {
                    out.push(format!(
                        "[{},{}] = {}",
                        self.names[i],
                        self.names[j],
                        format_combination(&self.names, &self.table[i][j])
                    ));
                }
            }
        }
        out
    }
}

/// Hom-Lie algebra with bracket `[x, y]_R` and twist `R`, for a compatible
/// weight-0 Rota-Baxter operator with `R² = 0`.
pub fn homlie_from_rb(l: &OmegaAlgebra, r: &OperatorMatrix) -> Result<HomLieAlgebra, ConstructionError> {
    const NAME: &str = "Hom-Lie construction";
    check_square(l, r)?;
    require(NAME, is_rota_baxter(l, r, &Rational::zero()), "R is a Rota-Baxter operator of weight 0")?;
    require(NAME, is_compatible(l, r), "R is compatible with omega")?;
    require(NAME, r.power(2)?.is_zero(), "R squares to zero")?;
    let d = deform_unchecked(l, r);
    let n = l.dim();
    let table = (0..n).map(|i| (0..n).map(|j| d.bracket_basis(i, j).to_vec()).collect()).collect();
    let g = HomLieAlgebra::new(l.names().to_vec(), table, r.clone());
    if let Some(f) = g.hom_jacobi_failures().first() {
        let (i, j, k) = f.triple;
        return Err(ConstructionError::OutputInvalid {
            construction: NAME,
            identity: format!("Hom-Jacobi on ({}, {}, {})", l.names()[i], l.names()[j], l.names()[k]),
        });
    }
    Ok(g)
}

/// Mutually exclusive structure labels, ordered from most to least
/// degenerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureLabel {
    Abelian,
    /// Nilpotent but not abelian.
    Nilpotent,
    /// Solvable but not nilpotent.
    Solvable,
    NonSolvable,
}

impl fmt::Display for StructureLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureLabel::Abelian => "abelian",
            StructureLabel::Nilpotent => "nilpotent",
            StructureLabel::Solvable => "solvable",
            StructureLabel::NonSolvable => "non-solvable",
        })
    }
}

/// Derived series `g^(0) = g, g^(i+1) = [g^(i), g^(i)]` and lower central
/// series `C^0 = g, C^(i+1) = [C^i, g]`, by dimension. Length and class are
/// the first index at which the series reaches zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub derived_length: Option<usize>,
    pub nilpotency_class: Option<usize>,
    pub label: StructureLabel,
}

impl SeriesReport {
    pub fn is_solvable(&self) -> bool {
        self.derived_length.is_some()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class.is_some()
    }
}

fn series(g: &HomLieAlgebra, next: impl Fn(&Subspace) -> Subspace) -> (Vec<usize>, Option<usize>) {
    let mut current = Subspace::full(g.dim());
    let mut dims = vec![current.dim()];
    loop {
        if current.dim() == 0 {
            let len = dims.len() - 1;
            return (dims, Some(len));
        }
        let n = next(&current);
        let stalled = n.dim() == current.dim();
        dims.push(n.dim());
        if stalled {
            return (dims, None);
        }
        current = n;
    }
}

pub fn homlie_structure(g: &HomLieAlgebra) -> SeriesReport {
    let full = Subspace::full(g.dim());
    let (derived_dims, derived_length) = series(g, |s| g.bracket_span(s, s));
    let (lower_central_dims, nilpotency_class) = series(g, |s| g.bracket_span(s, &full));
    let label = match (nilpotency_class, derived_length) {
        (Some(c), _) if c <= 1 => StructureLabel::Abelian,
        (Some(_), _) => StructureLabel::Nilpotent,
        (None, Some(_)) => StructureLabel::Solvable,
        (None, None) => StructureLabel::NonSolvable,
    };
    SeriesReport {
        derived_dims,
        lower_central_dims,
        derived_length,
        nilpotency_class,
        label,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;
    use crate::omega::Matrix;

    fn from_brackets(n: usize, brackets: &[(usize, usize, &[i64])]) -> HomLieAlgebra {
        let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
        for &(i, j, v) in brackets {
            table[i][j] = v.iter().map(|&a| int(a)).collect();
            table[j][i] = v.iter().map(|&a| int(-a)).collect();
        }
        let names = (0..n).map(|i| format!("e{}", i + 1)).collect();
        HomLieAlgebra::new(names, table, Matrix::zeros(n, n))
    }

    #[test]
    fn abelian_series() {
        let s = homlie_structure(&from_brackets(3, &[]));
        assert_eq!(s.label, StructureLabel::Abelian);
        assert_eq!(s.derived_length, Some(1));
        assert_eq!(s.nilpotency_class, Some(1));
    }

    #[test]
    fn heisenberg_is_nilpotent_class_two() {
        let s = homlie_structure(&from_brackets(3, &[(0, 1, &[0, 0, 1])]));
        assert_eq!(s.label, StructureLabel::Nilpotent);
        assert_eq!(s.nilpotency_class, Some(2));
        assert_eq!(s.lower_central_dims, vec![3, 1, 0]);
    }

    #[test]
    fn affine_line_is_solvable() {
        // [a, b] = b
        let s = homlie_structure(&from_brackets(2, &[(0, 1, &[0, 1])]));
        assert_eq!(s.label, StructureLabel::Solvable);
        assert_eq!(s.derived_length, Some(2));
        assert_eq!(s.nilpotency_class, None);
    }

    #[test]
    fn sl2_is_not_solvable() {
        let s = homlie_structure(&from_brackets(3, &[(0, 1, &[0, 2, 0]), (0, 2, &[0, 0, -2]), (1, 2, &[1, 0, 0])]));
        assert_eq!(s.label, StructureLabel::NonSolvable);
        assert_eq!(s.derived_dims, vec![3, 3]);
    }

    #[test]
    fn square_zero_required() {
        let l = OmegaAlgebra::abelian(&["a", "b"]);
        let r = Matrix::identity(2);
        let err = homlie_from_rb(&l, &r).unwrap_err();
        assert!(err.to_string().contains("squares to zero"));
        let g = homlie_from_rb(&l, &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(homlie_structure(&g).label, StructureLabel::Abelian);
    }
}
