use num_traits::Zero;

use crate::exactpoly::Rational;
use crate::omega::{format_combination, is_rota_baxter, kernel_omega, OmegaAlgebra, OperatorMatrix, Subspace};

use super::{check_square, require, ConstructionError};

/// Nonassociative algebra with `e_i e_j = Σ_k table[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftSymmetricAlgebra {
    names: Vec<String>,
    table: Vec<Vec<Vec<Rational>>>,
}

impl LeftSymmetricAlgebra {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn product(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
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

    /// Basis triples violating `(xy)z - x(yz) = (yx)z - y(xz)`.
    pub fn left_symmetry_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = num_traits::One::one();
            v
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let a = self.product(&self.product(&x, &y), &z);
                    let b = self.product(&x, &self.product(&y, &z));
                    let c = self.product(&self.product(&y, &x), &z);
                    let d = self.product(&y, &self.product(&x, &z));
                    if (0..n).any(|m| &a[m] - &b[m] != &c[m] - &d[m]) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Nonzero products, one per line, as `x*y = ...`.
    pub fn table_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.table[i][j].iter().any(|c| !c.is_zero()) {
                    out.push(format!(
                        "{}*{} = {}",
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

/// The product `xy = [R(x), y]`. Requires a weight-0 Rota-Baxter operator
/// whose image lies in the kernel of the form.
pub fn left_symmetric_from_rb(l: &OmegaAlgebra, r: &OperatorMatrix) -> Result<LeftSymmetricAlgebra, ConstructionError> {
    const NAME: &str = "left-symmetric product";
    check_square(l, r)?;
    require(NAME, is_rota_baxter(l, r, &Rational::zero()), "R is a Rota-Baxter operator of weight 0")?;
    let image = Subspace::full(l.dim()).image_under(r);
    require(NAME, kernel_omega(l).contains_subspace(&image), "image of R lies in the kernel of omega")?;

    let n = l.dim();
    let table = (0..n)
        .map(|i| (0..n).map(|j| l.bracket(r.row(i), &l.basis_vector(j))).collect())
        .collect();
    let out = LeftSymmetricAlgebra {
        names: l.names().to_vec(),
        table,
    };
    if let Some(&(i, j, k)) = out.left_symmetry_failures().first() {
        return Err(ConstructionError::OutputInvalid {
            construction: NAME,
            identity: format!("left symmetry on ({}, {}, {})", l.names()[i], l.names()[j], l.names()[k]),
        });
    }
    Ok(out)
}
