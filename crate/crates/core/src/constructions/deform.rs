use num_traits::Zero;
use serde::Serialize;

use crate::exactpoly::Rational;
use crate::omega::{is_compatible, is_rota_baxter, validate_algebra, Matrix, OmegaAlgebra, OperatorMatrix};

use super::{check_square, require, ConstructionError};

/// `[x, y]_R = [Rx, y] + [x, Ry]` and `ω_R(x, y) = ω(Rx, Ry)`, without
/// checking any hypothesis on `R`.
pub fn deform_unchecked(l: &OmegaAlgebra, r: &OperatorMatrix) -> OmegaAlgebra {
    let n = l.dim();
    let mut out = OmegaAlgebra::abelian(l.names()).with_params(l.params().to_vec());
    for i in 0..n {
        for j in i + 1..n {
            let a = l.bracket(r.row(i), &l.basis_vector(j));
            let b = l.bracket(&l.basis_vector(i), r.row(j));
            out.set_bracket(i, j, a.iter().zip(&b).map(|(p, q)| p + q).collect());
            out.set_omega(i, j, l.omega(r.row(i), r.row(j)));
        }
    }
    out
}

fn in_bc(l: &OmegaAlgebra, r: &OperatorMatrix) -> bool {
    is_rota_baxter(l, r, &Rational::zero()) && is_compatible(l, r)
}

/// The deformed algebra `L_R` for a compatible weight-0 Rota-Baxter `R`.
pub fn omega_deform(l: &OmegaAlgebra, r: &OperatorMatrix) -> Result<OmegaAlgebra, ConstructionError> {
    const NAME: &str = "deformation";
    check_square(l, r)?;
    require(NAME, is_rota_baxter(l, r, &Rational::zero()), "R is a Rota-Baxter operator of weight 0")?;
    require(NAME, is_compatible(l, r), "R is compatible with omega")?;
    let out = deform_unchecked(l, r);
    if let Some(f) = validate_algebra(&out).jacobi_failures.first() {
        return Err(ConstructionError::OutputInvalid {
            construction: NAME,
            identity: format!("omega-Jacobi on ({}, {}, {})", f.names.0, f.names.1, f.names.2),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IterationHalt {
    /// Step `i` whose operator `R^i` is not compatible Rota-Baxter on `L_{i-1}`.
    pub step: usize,
    pub hypothesis: String,
}

#[derive(Clone, Debug)]
pub struct IterationOutcome {
    /// `L_0 = L, L_1, ...` up to the last step that could be built.
    pub algebras: Vec<OmegaAlgebra>,
    /// Whether `R` itself is compatible Rota-Baxter on `L_1`.
    pub r_in_bc_of_first: bool,
    pub halted: Option<IterationHalt>,
}

/// `L_i = (L_{i-1})_{R^i}` for `i = 1..=steps`, where `R^i` is the `i`-fold
/// composite. Stops early, with a report, at the first step whose
/// operator fails the hypotheses on the previous algebra.
pub fn iterate_deform(l: &OmegaAlgebra, r: &OperatorMatrix, steps: usize) -> Result<IterationOutcome, ConstructionError> {
    const NAME: &str = "iterated deformation";
    check_square(l, r)?;
    require(NAME, in_bc(l, r), "R is a compatible Rota-Baxter operator of weight 0")?;
    let mut algebras = vec![l.clone()];
    let mut halted = None;
    let mut power = Matrix::identity(l.dim());
    for step in 1..=steps {
        power = power.mul(r)?;
        let prev = &algebras[step - 1];
        if !in_bc(prev, &power) {
            halted = Some(IterationHalt {
                step,
                hypothesis: format!("R^{step} is a compatible Rota-Baxter operator of weight 0 on L_{}", step - 1),
            });
            break;
        }
        let next = deform_unchecked(prev, &power);
        if !validate_algebra(&next).is_valid() {
            return Err(ConstructionError::OutputInvalid {
                construction: NAME,
                identity: format!("omega-Jacobi at step {step}"),
            });
        }
        algebras.push(next);
    }
    let r_in_bc_of_first = algebras.get(1).is_none_or(|l1| in_bc(l1, r));
    Ok(IterationOutcome {
        algebras,
        r_in_bc_of_first,
        halted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn l1() -> OmegaAlgebra {
        let mut l = OmegaAlgebra::abelian(&["x", "y", "z"]);
        l.set_bracket(0, 1, vec![int(0), int(1), int(0)]);
        l.set_bracket(1, 2, vec![int(0), int(0), int(1)]);
        l.set_omega(0, 1, int(1));
        l
    }

    #[test]
    fn zero_operator_gives_abelian() {
        let d = omega_deform(&l1(), &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(d, OmegaAlgebra::abelian(&["x", "y", "z"]));
        let it = iterate_deform(&l1(), &Matrix::zeros(3, 3), 3).unwrap();
        assert_eq!(it.algebras.len(), 4);
        assert!(it.halted.is_none());
    }

    #[test]
    fn incompatible_operator_rejected() {
        let r = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(omega_deform(&l1(), &r).is_err());
        assert!(iterate_deform(&l1(), &r, 1).is_err());
    }
}
