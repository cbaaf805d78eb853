//! Exact computation of Rota-Baxter operators on finite-dimensional
//! omega-Lie algebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactpoly`]: sparse polynomials over the rationals,
//! * [`ideal`]: Buchberger's algorithm and the ideal operations built on it,
//! * [`omega`]: omega-Lie algebras and classification of concrete operators,
//! * [`solver`]: polynomial systems cutting out Rota-Baxter varieties,
//! * [`constructions`]: algebras induced by Rota-Baxter operators,
//! * [`reports`]: catalog files, expectation tables and report rendering.
//!
//! All arithmetic is exact over Q. Every defining datum handled here is
//! rational, so Groebner bases, ideal memberships and Krull dimensions
//! computed over Q agree with the ones over C.

pub mod constructions;
pub mod exactpoly;
pub mod ideal;
pub mod omega;
pub mod reports;
pub mod solver;

pub use exactpoly::{int, rat, OrderKind, PolyRing, Polynomial, Rational};
