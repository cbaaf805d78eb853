//! Structures induced by Rota-Baxter operators: left-symmetric algebras,
//! deformed omega-Lie algebras, Hom-Lie algebras and twisted modules.
//!
//! Every construction verifies its hypotheses on the operator before
//! building anything and validates its output afterwards.

mod deform;
mod homlie;
mod lsa;
mod module;

pub use deform::{deform_unchecked, iterate_deform, omega_deform, IterationHalt, IterationOutcome};
pub use homlie::{homlie_from_rb, homlie_structure, HomJacobiFailure, HomLieAlgebra, SeriesReport, StructureLabel};
pub use lsa::{left_symmetric_from_rb, LeftSymmetricAlgebra};
pub use module::{annihilator, module_twist, validate_module, ModuleAction, ModuleValidation};

use thiserror::Error;

use crate::omega::OmegaError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("{construction}: hypothesis not satisfied: {hypothesis}")]
    Precondition {
        construction: &'static str,
        hypothesis: String,
    },
    #[error("{construction}: output violates {identity}")]
    OutputInvalid {
        construction: &'static str,
        identity: String,
    },
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

pub(crate) fn require(construction: &'static str, ok: bool, hypothesis: &str) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Precondition {
            construction,
            hypothesis: hypothesis.to_string(),
        })
    }
}

pub(crate) fn check_square(
    l: &crate::omega::OmegaAlgebra,
    r: &crate::omega::OperatorMatrix,
) -> Result<(), ConstructionError> {
    if r.rows() != l.dim() || r.cols() != l.dim() {
        return Err(OmegaError::Dimension {
            expected: l.dim(),
            found: r.rows(),
        }
        .into());
    }
    Ok(())
}
