use num_traits::Zero;
use serde::Serialize;

use crate::exactpoly::Rational;
use crate::omega::{is_isometric, is_rota_baxter, Matrix, OmegaAlgebra, OperatorMatrix, Subspace};

use super::{check_square, require, ConstructionError};

/// Action of `L` on an `m`-dimensional space: `e_i · v = actions[i] v` for
/// column vectors `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    dim: usize,
    actions: Vec<Matrix>,
}

impl ModuleAction {
    pub fn new(dim: usize, actions: Vec<Matrix>) -> Result<Self, ConstructionError> {
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(crate::omega::OmegaError::Dimension {
                    expected: dim,
                    found: a.rows(),
                }
                .into());
            }
        }
        Ok(ModuleAction { dim, actions })
    }

    /// The zero-dimensional module over an `n`-dimensional algebra.
    pub fn zero(n: usize) -> Self {
        ModuleAction {
            dim: 0,
            actions: vec![Matrix::zeros(0, 0); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action matrix of the element with coordinates `x`.
    pub fn action_of(&self, x: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (xi, a) in x.iter().zip(&self.actions) {
            if !xi.is_zero() {
                out = out.add(&a.scale(xi)).expect("square of module size");
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModuleValidation {
    /// Basis pairs `(i, j)` where `[x,y]·v = x·(y·v) - y·(x·v) + ω(x,y) v` fails.
    pub failures: Vec<(usize, usize)>,
}

impl ModuleValidation {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn validate_module(l: &OmegaAlgebra, v: &ModuleAction) -> Result<ModuleValidation, ConstructionError> {
    if v.actions.len() != l.dim() {
        return Err(crate::omega::OmegaError::Dimension {
            expected: l.dim(),
            found: v.actions.len(),
        }
        .into());
    }
    let mut failures = Vec::new();
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            let lhs = v.action_of(l.bracket_basis(i, j));
            let (a, b) = (&v.actions[i], &v.actions[j]);
            let rhs = a
                .mul(b)?
                .sub(&b.mul(a)?)?
                .add(&Matrix::scalar(v.dim, l.omega_basis(i, j).clone()))?;
            if lhs != rhs {
                failures.push((i, j));
            }
        }
    }
    Ok(ModuleValidation { failures })
}

/// `ann_L(V) = {x ∈ L : x · v = 0 for all v}`.
pub fn annihilator(l: &OmegaAlgebra, v: &ModuleAction) -> Subspace {
    let n = l.dim();
    let m = v.dim;
    if m == 0 {
        return Subspace::full(n);
    }
    // row i holds the flattened action of e_i; the annihilator is its left null space
    let rows: Vec<Vec<Rational>> = v.actions.iter().map(|a| a.to_rows().concat()).collect();
    let a = Matrix::from_rows(rows).expect("uniform action sizes");
    Subspace::span(n, a.transpose().null_space())
}

/// The action `x * v = R(x) · v` for an isometric weight-1 Rota-Baxter
/// operator `R` with `R([R(L), L]) ⊆ ann_L(V)`.
pub fn module_twist(l: &OmegaAlgebra, v: &ModuleAction, r: &OperatorMatrix) -> Result<ModuleAction, ConstructionError> {
    const NAME: &str = "module twist";
    check_square(l, r)?;
    require(NAME, is_rota_baxter(l, r, &num_traits::One::one()), "R is a Rota-Baxter operator of weight 1")?;
    require(NAME, is_isometric(l, r), "R is isometric")?;
    let n = l.dim();
    let mut spanning = Vec::new();
    for i in 0..n {
        for j in 0..n {
            spanning.push(l.bracket(r.row(i), &l.basis_vector(j)));
        }
    }
    let image = Subspace::span(n, spanning).image_under(r);
    require(
        NAME,
        annihilator(l, v).contains_subspace(&image),
        "R([R(L), L]) lies in the annihilator of the module",
    )?;
    let actions = (0..n).map(|i| v.action_of(r.row(i))).collect();
    let out = ModuleAction { dim: v.dim, actions };
    if let Some(&(i, j)) = validate_module(l, &out)?.failures.first() {
        return Err(ConstructionError::OutputInvalid {
            construction: NAME,
            identity: format!("module identity on ({}, {})", l.names()[i], l.names()[j]),
        });
    }
    Ok(out)
}
