use num_traits::Zero;
use serde::Serialize;

use crate::exactpoly::Rational;

use super::{Matrix, OmegaError, Subspace};

/// Finite-dimensional omega-Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` and a skew form `omega[i][j] = ω(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaAlgebra {
    names: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
    omega: Matrix,
    params: Vec<(String, Rational)>,
}

/// A basis triple on which the omega-Jacobi identity fails, with
/// `residual = [[x,y],z] + cyclic - (ω(x,y) z + ω(y,z) x + ω(z,x) y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub names: (String, String, String),
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraValidation {
    /// Pairs `(i, j)` with `[e_i, e_j] != -[e_j, e_i]`.
    pub bracket_not_skew: Vec<(usize, usize)>,
    /// Pairs `(i, j)` with `ω(e_i, e_j) != -ω(e_j, e_i)`.
    pub omega_not_skew: Vec<(usize, usize)>,
    pub jacobi_failures: Vec<JacobiFailure>,
}

impl AlgebraValidation {
    pub fn is_valid(&self) -> bool {
        self.bracket_not_skew.is_empty() && self.omega_not_skew.is_empty() && self.jacobi_failures.is_empty()
    }
}

impl OmegaAlgebra {
    /// Algebra with zero bracket and zero form.
    pub fn abelian<S: AsRef<str>>(names: &[S]) -> Self {
        let n = names.len();
        OmegaAlgebra {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            c: vec![vec![vec![Rational::zero(); n]; n]; n],
            omega: Matrix::zeros(n, n),
            params: Vec::new(),
        }
    }

    /// Builds from full tables. No identities are checked here; call
    /// [`validate_algebra`] before use.
    pub fn from_tables(
        names: Vec<String>,
        c: Vec<Vec<Vec<Rational>>>,
        omega: Matrix,
    ) -> Result<Self, OmegaError> {
        let n = names.len();
        if n == 0 {
            return Err(OmegaError::Empty);
        }
        let shape_ok = c.len() == n && c.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n));
        if !shape_ok || omega.rows() != n || omega.cols() != n {
            return Err(OmegaError::Dimension {
                expected: n,
                found: c.len(),
            });
        }
        Ok(OmegaAlgebra {
            names,
            c,
            omega,
            params: Vec::new(),
        })
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Rational>) {
        let neg: Vec<Rational> = v.iter().map(|a| -a.clone()).collect();
        self.c[i][j] = v;
        self.c[j][i] = neg;
    }

    /// Sets `ω(e_i, e_j) = w` and `ω(e_j, e_i) = -w`.
    pub fn set_omega(&mut self, i: usize, j: usize, w: Rational) {
        self.omega.set(j, i, -w.clone());
        self.omega.set(i, j, w);
    }

    pub fn with_params(mut self, params: Vec<(String, Rational)>) -> Self {
        self.params = params;
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn params(&self) -> &[(String, Rational)] {
        &self.params
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    pub fn omega_matrix(&self) -> &Matrix {
        &self.omega
    }

    pub fn omega_basis(&self, i: usize, j: usize) -> &Rational {
        self.omega.get(i, j)
    }

    pub fn is_lie(&self) -> bool {
        self.omega.is_zero()
    }

    /// `[u, v]` on coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        *o += &uv * c;
                    }
                }
            }
        }
        out
    }

    /// `ω(u, v)` on coordinate vectors.
    pub fn omega(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let w = self.omega.get(i, j);
                if !w.is_zero() && !vj.is_zero() {
                    acc += ui * vj * w;
                }
            }
        }
        acc
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = num_traits::One::one();
        v
    }

    /// Renders a coordinate vector as a combination of basis names.
    pub fn format_vector(&self, v: &[Rational]) -> String {
        format_combination(&self.names, v)
    }
}

pub(crate) fn format_combination(names: &[String], v: &[Rational]) -> String {
    let mut s = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != num_traits::One::one() {
            s.push_str(&mag.to_string());
            s.push('*');
        }
        s.push_str(name);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Checks skew-symmetry of both tables and the omega-Jacobi identity
/// `[[x,y],z] + [[y,z],x] + [[z,x],y] = ω(x,y) z + ω(y,z) x + ω(z,x) y`
/// on basis triples `i < j < k`. Both sides are alternating once the
/// tables are skew, so these triples suffice.
pub fn validate_algebra(l: &OmegaAlgebra) -> AlgebraValidation {
    let n = l.dim();
    let mut report = AlgebraValidation::default();
    for i in 0..n {
        for j in i..n {
            let skew = (0..n).all(|k| l.c[i][j][k] == -l.c[j][i][k].clone());
            if !skew {
                report.bracket_not_skew.push((i, j));
            }
            if *l.omega.get(i, j) != -l.omega.get(j, i).clone() {
                report.omega_not_skew.push((i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let residual = jacobi_residual(l, i, j, k);
                if residual.iter().any(|r| !r.is_zero()) {
                    report.jacobi_failures.push(JacobiFailure {
                        triple: (i, j, k),
                        names: (l.names[i].clone(), l.names[j].clone(), l.names[k].clone()),
                        residual: residual.iter().map(ToString::to_string).collect(),
                    });
                }
            }
        }
    }
    report
}

pub(crate) fn jacobi_residual(l: &OmegaAlgebra, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let (x, y, z) = (l.basis_vector(i), l.basis_vector(j), l.basis_vector(k));
    let mut r = vec![Rational::zero(); l.dim()];
    for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
        let t = l.bracket(&l.bracket(a, b), c);
        let w = l.omega(a, b);
        for m in 0..l.dim() {
            r[m] += &t[m] - &w * &c[m];
        }
    }
    r
}

/// `ker ω = {x : ω(x, y) = 0 for all y}`.
pub fn kernel_omega(l: &OmegaAlgebra) -> Subspace {
    // ω(v, e_j) = (v Ω)_j, so the kernel is the null space of Ω^T
    Subspace::span(l.dim(), l.omega.transpose().null_space())
}
