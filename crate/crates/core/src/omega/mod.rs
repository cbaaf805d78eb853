//! Omega-Lie algebras: structure constants, validation of the defining
//! identities, the kernel of the form, and classification of concrete
//! linear operators.

mod algebra;
mod classify;
mod linalg;

pub use algebra::{kernel_omega, validate_algebra, AlgebraValidation, JacobiFailure, OmegaAlgebra};
pub(crate) use algebra::format_combination;
pub use classify::{
    classify_map, inverse_correspondence, is_automorphism, is_compatible, is_derivation, is_isometric,
    is_rota_baxter, MapClassification,
};
pub use linalg::{Matrix, OperatorMatrix, Subspace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OmegaError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("algebra has no basis vectors")]
    Empty,
}
