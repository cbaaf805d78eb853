//! Expectation records and candidate component files.
//!
//! ```toml
//! table = 1
//! title = "compatible weight-0 operators"
//!
//! [[row]]
//! algebra = "L2"
//! profile = "bc"
//! dim = 2
//! components = 3
//!
//! [[row.candidate]]
//! name = "p1"
//! generators = ["x11", "x12", "x13", "x21", "x22", "x23", "x33"]
//! solve = ["x11", "x12", "x13", "x21", "x22", "x23", "x33"]
//! dim = 2
//! ```
//!
//! Generators may use the row's algebra parameters. A certificate is given
//! by `solve` (designated variables) and an optional `pivot`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::StructureLabel;
use crate::exactpoly::{parse_expr, parse_rational, PolyRing};
use crate::ideal::{CertificateSpec, Ideal, PrimalityCertificate};
use crate::solver::Candidate;

use super::catalog::{CatalogError, ParamValues};

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateRecord {
    pub name: String,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solve: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Expected structure of the Hom-Lie algebras induced by generic
    /// points of this component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homlie: Option<StructureLabel>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationRow {
    pub algebra: String,
    pub profile: String,
    /// Parameter specialization; parametric algebras without one are run
    /// at each catalog sample.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    /// Set when the expected values are known to be inconsistent with
    /// other published data; mismatches are then reported as discrepancies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidate: Vec<CandidateRecord>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationFile {
    #[serde(default)]
    pub table: Option<u32>,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub row: Vec<ExpectationRow>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CandidateFile {
    #[serde(default)]
    candidate: Vec<CandidateRecord>,
}

fn read(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_expectations(text: &str) -> Result<ExpectationFile, CatalogError> {
    toml::from_str(text).map_err(|e| CatalogError::Syntax(e.to_string()))
}

pub fn load_expectations(path: &Path) -> Result<ExpectationFile, CatalogError> {
    parse_expectations(&read(path)?)
}

/// A file of `[[candidate]]` records.
pub fn parse_candidates(text: &str) -> Result<Vec<CandidateRecord>, CatalogError> {
    let f: CandidateFile = toml::from_str(text).map_err(|e| CatalogError::Syntax(e.to_string()))?;
    Ok(f.candidate)
}

pub fn load_candidates(path: &Path) -> Result<Vec<CandidateRecord>, CatalogError> {
    parse_candidates(&read(path)?)
}

/// Parses the row's parameter values.
pub fn row_params(row: &ExpectationRow) -> Result<ParamValues, CatalogError> {
    row.params
        .iter()
        .map(|(k, v)| {
            parse_rational(v)
                .map(|q| (k.clone(), q))
                .map_err(|e| CatalogError::Params {
                    algebra: row.algebra.clone(),
                    message: format!("{k}: {e}"),
                })
        })
        .collect()
}

impl CandidateRecord {
    /// The candidate ideal and certificate over `ring`, with parameters
    /// replaced by `values`.
    pub fn to_candidate(&self, ring: &Arc<PolyRing>, values: &ParamValues) -> Result<Candidate, CatalogError> {
        let err = |m: String| CatalogError::Params {
            algebra: format!("candidate {}", self.name),
            message: m,
        };
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let e = parse_expr(g).map_err(|e| err(e.to_string()))?;
                let e = super::catalog::substitute_params(&e, values);
                e.to_poly(ring).map_err(|e| err(format!("{g}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = Ideal::new(ring, gens).map_err(|e| err(e.to_string()))?;
        let certificate = if self.solve.is_empty() && self.pivot.is_none() {
            None
        } else {
            let spec = CertificateSpec {
                solve: self.solve.clone(),
                pivot: self.pivot.clone(),
            };
            Some(PrimalityCertificate::from_spec(ring, &spec).map_err(|e| err(e.to_string()))?)
        };
        Ok(Candidate {
            label: self.name.clone(),
            ideal,
            certificate,
        })
    }
}
