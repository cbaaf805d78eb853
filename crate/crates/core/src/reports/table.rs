//! Reproduction of tabulated variety data, cell by cell.

use std::fmt;
use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{homlie_from_rb, homlie_structure, StructureLabel};
use crate::exactpoly::OrderKind;
use crate::ideal::{check_primality, Dimension};
use crate::omega::{Matrix, OmegaAlgebra};
use crate::solver::{analyze_variety, operator_ring, AnalysisOptions, Candidate, ConstraintProfile};

use super::catalog::{find, CatalogEntry, CatalogError, ParamValues};
use super::expect::{row_params, CandidateRecord, ExpectationFile, ExpectationRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    Discrepancy,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Discrepancy => "DISCREPANCY",
            Outcome::Skipped => "SKIPPED",
        })
    }
}

/// Structure of Hom-Lie algebras sampled on one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelSample {
    /// Most generic label seen among the samples.
    pub generic: StructureLabel,
    /// Labels below the generic one that some samples fell into.
    pub special: Vec<StructureLabel>,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCell {
    pub name: String,
    pub dim: Option<usize>,
    pub expected_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homlie: Option<LabelSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_homlie: Option<StructureLabel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub algebra: String,
    pub params: String,
    pub profile: String,
    pub outcome: Outcome,
    pub notes: Vec<String>,
    pub equations: usize,
    pub groebner_size: usize,
    pub dim: Option<Dimension>,
    pub expected_dim: Option<usize>,
    pub components: Option<usize>,
    pub expected_components: Option<usize>,
    /// Whether the component count comes from a verified decomposition
    /// rather than the splitting heuristic.
    pub certified: bool,
    pub component_cells: Vec<ComponentCell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Cell {
    fn skipped(row: &ExpectationRow, params: String, reason: String) -> Self {
        Cell {
            algebra: row.algebra.clone(),
            params,
            profile: row.profile.clone(),
            outcome: Outcome::Skipped,
            notes: vec![reason],
            equations: 0,
            groebner_size: 0,
            dim: None,
            expected_dim: row.dim,
            components: None,
            expected_components: row.components,
            certified: false,
            component_cells: Vec::new(),
            elapsed_ms: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub table: Option<u32>,
    pub title: String,
    pub cells: Vec<Cell>,
}

impl TableReport {
    pub fn count(&self, o: Outcome) -> usize {
        self.cells.iter().filter(|c| c.outcome == o).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Outcome::Fail) > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match self.table {
            Some(t) => {
                let _ = writeln!(out, "table {t}: {}", self.title);
            }
            None => {
                let _ = writeln!(out, "{}", self.title);
            }
        }
        for c in &self.cells {
            let name = format!("{}{}", c.algebra, c.params);
            let _ = write!(out, "{:<11} {} {:<12}", c.outcome.to_string(), c.profile, name);
            if c.outcome != Outcome::Skipped {
                let dim = c.dim.map(|d| d.to_string()).unwrap_or_else(|| "?".into());
                let _ = write!(out, " dim {dim}");
                if let Some(e) = c.expected_dim {
                    let _ = write!(out, " (expected {e})");
                }
                if let Some(k) = c.components {
                    let _ = write!(out, ", components {k}{}", if c.certified { "" } else { " uncertified" });
                    if let Some(e) = c.expected_components {
                        let _ = write!(out, " (expected {e})");
                    }
                }
                let _ = write!(out, ", {} equations, {} basis elements", c.equations, c.groebner_size);
                if let Some(ms) = c.elapsed_ms {
                    let _ = write!(out, ", {ms} ms");
                }
            }
            out.push('\n');
            for comp in &c.component_cells {
                let _ = write!(out, "    {}", comp.name);
                if let Some(d) = comp.dim {
                    let _ = write!(out, " dim {d}");
                }
                if let Some(h) = &comp.homlie {
                    let _ = write!(out, ", Hom-Lie {}", h.generic);
                    if !h.special.is_empty() {
                        let s: Vec<String> = h.special.iter().map(ToString::to_string).collect();
                        let _ = write!(out, " (special points: {})", s.join(", "));
                    }
                }
                if let Some(e) = comp.expected_homlie {
                    let _ = write!(out, " (expected {e})");
                }
                out.push('\n');
            }
            for n in &c.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} discrepancy, {} skipped",
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Discrepancy),
            self.count(Outcome::Skipped)
        );
        out
    }
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub jobs: usize,
    /// Hom-Lie samples per component.
    pub samples: usize,
    pub seed: u64,
    pub timing: bool,
    /// Splitting depth used when a row lists no candidates.
    pub split_depth: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            jobs: 1,
            samples: 5,
            seed: 0x5eed,
            timing: false,
            split_depth: 8,
        }
    }
}

/// The operator whose matrix has the point's coordinates in row-major order.
pub fn point_to_operator(point: &[crate::exactpoly::Rational], n: usize) -> Matrix {
    Matrix::from_rows(point.chunks(n).map(<[_]>::to_vec).collect()).expect("square point")
}

/// Samples Hom-Lie structures at random points of a certified component.
pub fn sample_homlie_labels(
    l: &OmegaAlgebra,
    candidate: &Candidate,
    samples: usize,
    seed: u64,
) -> Result<LabelSample, String> {
    let cert = candidate.certificate.as_ref().ok_or("component has no certificate to sample from")?;
    let param = check_primality(&candidate.ideal, cert).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = Vec::new();
    for _ in 0..samples {
        let pt = param.sample_point(&mut rng).map_err(|e| e.to_string())?;
        let r = point_to_operator(&pt, l.dim());
        let g = homlie_from_rb(l, &r).map_err(|e| e.to_string())?;
        labels.push(homlie_structure(&g).label);
    }
    let generic = labels.iter().copied().max().ok_or("no samples requested")?;
    let mut special: Vec<StructureLabel> = labels.into_iter().filter(|&x| x < generic).collect();
    special.sort();
    special.dedup();
    Ok(LabelSample {
        generic,
        special,
        samples,
    })
}

fn params_suffix(values: &ParamValues) -> String {
    if values.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Runs one specialization of a row.
fn run_cell(entry: &CatalogEntry, row: &ExpectationRow, values: &ParamValues, options: &TableOptions) -> Cell {
    let start = Instant::now();
    let mut cell = Cell::skipped(row, params_suffix(values), String::new());
    cell.notes.clear();
    cell.outcome = Outcome::Pass;
    let mut mismatches: Vec<String> = Vec::new();
    let mut errors: Vec<String> = Vec::new();

    let result = (|| -> Result<(), String> {
        let l = entry.specialize(values).map_err(|e| e.to_string())?;
        let profile: ConstraintProfile = row.profile.parse().map_err(|e: crate::solver::SolverError| e.to_string())?;
        let ring = operator_ring(l.dim(), OrderKind::Grevlex);
        let candidates: Vec<Candidate> = row
            .candidate
            .iter()
            .map(|c| c.to_candidate(&ring, values))
            .collect::<Result<_, CatalogError>>()
            .map_err(|e| e.to_string())?;
        let opts = AnalysisOptions {
            order: OrderKind::Grevlex,
            split_depth: Some(options.split_depth),
        };
        let report = analyze_variety(&l, &profile, Some(&candidates), &opts).map_err(|e| e.to_string())?;
        cell.equations = report.system.equations.len();
        cell.groebner_size = report.groebner.len();
        cell.dim = Some(report.dimension);
        if let Some(e) = row.dim {
            if report.dimension != Dimension::Dim(e) {
                mismatches.push(format!("dimension {} but expected {e}", report.dimension));
            }
        }
        match (&report.components, &report.split) {
            (Some(c), _) => {
                cell.certified = c.verified();
                cell.components = Some(c.candidates.len());
                for f in c.failures() {
                    errors.push(f);
                }
                for (rec, (cand, out)) in row.candidate.iter().zip(candidates.iter().zip(&c.candidates)) {
                    cell.component_cells.push(component_cell(&l, rec, cand, out.prime.as_ref().ok().copied(), &profile, options, &mut mismatches, &mut errors));
                }
            }
            (None, Some((pieces, partial))) => {
                cell.components = Some(pieces.len());
                cell.notes.push(format!(
                    "no candidates listed; count from the splitting heuristic{}",
                    if *partial { " (depth cap reached)" } else { "" }
                ));
            }
            (None, None) => {}
        }
        if let (Some(e), Some(k)) = (row.components, cell.components) {
            if e != k {
                mismatches.push(format!("{k} components but expected {e}"));
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        errors.push(e);
    }

    cell.outcome = if !errors.is_empty() {
        Outcome::Fail
    } else if mismatches.is_empty() {
        Outcome::Pass
    } else if row.discrepancy.is_some() {
        Outcome::Discrepancy
    } else {
        Outcome::Fail
    };
    if let (Outcome::Discrepancy | Outcome::Pass, Some(d)) = (cell.outcome, &row.discrepancy) {
        cell.notes.push(format!("known inconsistency: {d}"));
    }
    cell.notes.extend(mismatches);
    cell.notes.extend(errors);
    if options.timing {
        cell.elapsed_ms = Some(start.elapsed().as_millis());
    }
    cell
}

#[allow(clippy::too_many_arguments)]
fn component_cell(
    l: &OmegaAlgebra,
    rec: &CandidateRecord,
    cand: &Candidate,
    dim: Option<usize>,
    profile: &ConstraintProfile,
    options: &TableOptions,
    mismatches: &mut Vec<String>,
    errors: &mut Vec<String>,
) -> ComponentCell {
    if let (Some(e), Some(d)) = (rec.dim, dim) {
        if e != d {
            mismatches.push(format!("component {} has dimension {d} but expected {e}", rec.name));
        }
    }
    let homlie = if *profile == ConstraintProfile::bs() {
        match sample_homlie_labels(l, cand, options.samples, options.seed) {
            Ok(s) => {
                if let Some(e) = rec.homlie {
                    if s.generic != e {
                        mismatches.push(format!("component {} induces {} Hom-Lie algebras but expected {e}", rec.name, s.generic));
                    }
                }
                Some(s)
            }
            Err(e) => {
                errors.push(format!("component {}: {e}", rec.name));
                None
            }
        }
    } else {
        None
    };
    ComponentCell {
        name: rec.name.clone(),
        dim,
        expected_dim: rec.dim,
        homlie,
        expected_homlie: rec.homlie,
    }
}

/// Expands a row into the specializations to run, or a skip reason.
fn plan_row<'a>(catalog: &'a [CatalogEntry], row: &ExpectationRow) -> Result<(&'a CatalogEntry, Vec<ParamValues>), (String, String)> {
    let entry = match find(catalog, &row.algebra) {
        Ok(e) => e,
        Err(_) => return Err((String::new(), "no-definition: algebra not in the catalog".into())),
    };
    if entry.external_source {
        return Err((String::new(), format!("no-definition: external-source stub ({})", entry.source)));
    }
    let values = row_params(row).map_err(|e| (String::new(), e.to_string()))?;
    if values.is_empty() && entry.is_parametric() {
        Ok((entry, entry.sample_specializations()))
    } else {
        Ok((entry, vec![values]))
    }
}

/// Runs every row. Cells come out in row order, then specialization order,
/// whatever the parallelism.
pub fn run_table(catalog: &[CatalogEntry], expectations: &ExpectationFile, options: &TableOptions) -> TableReport {
    let mut work: Vec<(usize, Option<(&CatalogEntry, ParamValues)>, Option<String>)> = Vec::new();
    for (i, row) in expectations.row.iter().enumerate() {
        match plan_row(catalog, row) {
            Ok((entry, specs)) => {
                for v in specs {
                    work.push((i, Some((entry, v)), None));
                }
            }
            Err((_, reason)) => work.push((i, None, Some(reason))),
        }
    }
    let run = |w: &(usize, Option<(&CatalogEntry, ParamValues)>, Option<String>)| -> Cell {
        let row = &expectations.row[w.0];
        match (&w.1, &w.2) {
            (Some((entry, v)), _) => run_cell(entry, row, v, options),
            (None, reason) => Cell::skipped(row, String::new(), reason.clone().unwrap_or_default()),
        }
    };
    let cells = if options.jobs <= 1 {
        work.iter().map(run).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build() {
            Ok(pool) => pool.install(|| work.par_iter().map(run).collect()),
            Err(_) => work.iter().map(run).collect(),
        }
    };
    TableReport {
        table: expectations.table,
        title: expectations.title.clone(),
        cells,
    }
}
