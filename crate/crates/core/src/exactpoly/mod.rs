//! Exact multivariate polynomial arithmetic over the rationals.

mod monomial;
mod parse;
mod poly;
mod rational;

pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::{parse_expr, Expr};
pub use poly::{PolyRing, Polynomial, Term, VariableTable};
pub use rational::{int, parse_rational, rat, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("parse error in {input:?} at offset {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("invalid variable name '{0}'")]
    BadVariableName(String),
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("operands belong to different polynomial rings: {0}")]
    RingMismatch(String),
    #[error("invalid monomial order: {0}")]
    Order(String),
    #[error("division by zero")]
    DivisionByZero,
}
