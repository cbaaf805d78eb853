//! Catalog ingestion, expectation records and the reports behind the
//! command-line tool.

mod catalog;
mod commands;
mod expect;
mod table;

pub use catalog::{
    default_parameter_samples, find, load_catalog, parse_assignments, parse_catalog, parse_operator, write_algebra,
    write_structure, CatalogEntry, CatalogError, ParamValues, Provenance,
};
pub use commands::{
    cmd_classify, cmd_construct, cmd_solve, describe_series, parse_module, parse_order, ClassifyReport,
    ConstructReport, ConstructionKind, SolveReport, SplitSummary,
};
pub use expect::{
    load_candidates, load_expectations, parse_candidates, parse_expectations, row_params, CandidateRecord,
    ExpectationFile, ExpectationRow,
};
pub use table::{
    point_to_operator, run_table, sample_homlie_labels, Cell, ComponentCell, LabelSample, Outcome, TableOptions,
    TableReport,
};

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::omega::OmegaError;
use crate::solver::SolverError;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error("{0}")]
    Usage(String),
}

impl ReportError {
    /// Failed hypotheses of a construction, as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(self, ReportError::Construction(ConstructionError::Precondition { .. }))
    }
}

/// Data files compiled into the library.
pub mod shipped {
    pub const CATALOG: &str = include_str!("../../data/catalog.toml");
    pub const TABLE1: &str = include_str!("../../data/table1.toml");
    pub const TABLE2: &str = include_str!("../../data/table2.toml");
    pub const TABLE3: &str = include_str!("../../data/table3.toml");

    pub fn table(id: u32) -> Option<&'static str> {
        match id {
            1 => Some(TABLE1),
            2 => Some(TABLE2),
            3 => Some(TABLE3),
            _ => None,
        }
    }
}
