//! Single computations: solving one variety, running one construction,
//! classifying one operator.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    homlie_from_rb, homlie_structure, iterate_deform, left_symmetric_from_rb, module_twist, omega_deform,
    validate_module, IterationHalt, ModuleAction, SeriesReport,
};
use crate::exactpoly::{parse_expr, OrderKind, Rational};
use crate::ideal::{ComponentReport, Dimension};
use crate::omega::{classify_map, format_combination, validate_algebra, MapClassification, Matrix, OmegaAlgebra, OperatorMatrix};
use crate::solver::{analyze_variety, membership_check, operator_ring, AnalysisOptions, Candidate, ConstraintProfile};

use super::catalog::{write_algebra, write_structure, CatalogEntry, CatalogError, ParamValues, Provenance};
use super::expect::CandidateRecord;
use super::ReportError;

#[derive(Clone, Debug, Serialize)]
pub struct SplitSummary {
    pub pieces: Vec<Vec<String>>,
    pub partial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub algebra: String,
    pub params: BTreeMap<String, String>,
    pub profile: String,
    pub order: String,
    pub equations: Vec<(String, String)>,
    pub groebner: Vec<String>,
    pub dimension: Dimension,
    pub candidate_names: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitSummary>,
}

impl SolveReport {
    /// False when candidates were supplied and did not verify.
    pub fn ok(&self) -> bool {
        self.components.as_ref().is_none_or(ComponentReport::verified)
    }

    pub fn component_count(&self) -> Option<usize> {
        match (&self.components, &self.split) {
            (Some(c), _) if c.verified() => Some(c.candidates.len()),
            (None, Some(s)) => Some(s.pieces.len()),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            out,
            "algebra {}{} profile {} order {}",
            self.algebra,
            if params.is_empty() { String::new() } else { format!(" [{}]", params.join(", ")) },
            self.profile,
            self.order
        );
        let _ = writeln!(out, "equations ({}):", self.equations.len());
        for (tag, e) in &self.equations {
            let _ = writeln!(out, "  {tag}: {e}");
        }
        let _ = writeln!(out, "groebner basis ({}):", self.groebner.len());
        for g in &self.groebner {
            let _ = writeln!(out, "  {g}");
        }
        let _ = writeln!(out, "dimension: {}", self.dimension);
        if let Some(c) = &self.components {
            let status = if c.verified() { "verified" } else { "NOT verified" };
            let _ = writeln!(out, "components: {} candidates, {status}", c.candidates.len());
            for (name, o) in self.candidate_names.iter().zip(&c.candidates) {
                let prime = match &o.prime {
                    Ok(d) => format!("prime of dimension {d}"),
                    Err(e) => format!("not certified ({e})"),
                };
                let _ = writeln!(out, "  {name}: dim {}, {prime}", o.dimension);
            }
            for f in c.failures() {
                let _ = writeln!(out, "  failure: {f}");
            }
        }
        if let Some(s) = &self.split {
            let _ = writeln!(
                out,
                "components (splitting heuristic, uncertified{}): {}",
                if s.partial { ", depth cap reached" } else { "" },
                s.pieces.len()
            );
            for (i, p) in s.pieces.iter().enumerate() {
                let _ = writeln!(out, "  piece {}: {}", i + 1, p.join(", "));
            }
        }
        out
    }
}

pub fn parse_order(s: &str) -> Result<OrderKind, ReportError> {
    match s {
        "grevlex" => Ok(OrderKind::Grevlex),
        "lex" => Ok(OrderKind::Lex),
        _ => Err(ReportError::Usage(format!("unknown order '{s}' (expected lex or grevlex)"))),
    }
}

fn order_name(k: OrderKind) -> &'static str {
    match k {
        OrderKind::Lex => "lex",
        _ => "grevlex",
    }
}

fn params_strings(values: &ParamValues) -> BTreeMap<String, String> {
    values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

pub fn cmd_solve(
    entry: &CatalogEntry,
    profile: &str,
    values: &ParamValues,
    candidates: Option<&[CandidateRecord]>,
    order: OrderKind,
) -> Result<SolveReport, ReportError> {
    let l = entry.specialize(values)?;
    let profile_v = ConstraintProfile::from_str(profile)?;
    let ring = operator_ring(l.dim(), order);
    let cands: Vec<Candidate> = candidates
        .unwrap_or_default()
        .iter()
        .map(|c| c.to_candidate(&ring, values))
        .collect::<Result<_, CatalogError>>()?;
    let options = AnalysisOptions {
        order,
        split_depth: Some(8),
    };
    let report = analyze_variety(&l, &profile_v, Some(&cands), &options)?;
    Ok(SolveReport {
        algebra: entry.name.clone(),
        params: params_strings(values),
        profile: profile.to_string(),
        order: order_name(order).to_string(),
        equations: report.system.equations.iter().map(|e| (e.tag.to_string(), e.poly.to_string())).collect(),
        groebner: report.groebner.elements().iter().map(ToString::to_string).collect(),
        dimension: report.dimension,
        candidate_names: cands.iter().map(|c| c.label.clone()).collect(),
        components: report.components,
        split: report.split.map(|(pieces, partial)| SplitSummary {
            pieces: pieces.iter().map(|p| p.generators().iter().map(ToString::to_string).collect()).collect(),
            partial,
        }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    Lsa,
    Deform,
    Homlie,
    ModuleTwist,
}

impl FromStr for ConstructionKind {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lsa" => Ok(ConstructionKind::Lsa),
            "deform" => Ok(ConstructionKind::Deform),
            "homlie" => Ok(ConstructionKind::Homlie),
            "module-twist" => Ok(ConstructionKind::ModuleTwist),
            _ => Err(ReportError::Usage(format!(
                "unknown construction '{s}' (expected lsa, deform, homlie or module-twist)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructReport {
    pub kind: ConstructionKind,
    pub algebra: String,
    pub provenance: Provenance,
    /// The constructed structures in catalog format.
    pub output: Vec<String>,
    pub checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halted: Option<IterationHalt>,
}

impl ConstructReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for o in &self.output {
            out.push_str(o);
            out.push('\n');
        }
        for c in &self.checks {
            let _ = writeln!(out, "# check: {c}");
        }
        if let Some(s) = &self.series {
            let dims = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" > ");
            let _ = writeln!(out, "# derived series dims: {}", dims(&s.derived_dims));
            let _ = writeln!(out, "# lower central series dims: {}", dims(&s.lower_central_dims));
            let _ = writeln!(out, "# structure: {}", describe_series(s));
        }
        if let Some(h) = &self.halted {
            let _ = writeln!(out, "# iteration halted at step {}: {} fails", h.step, h.hypothesis);
        }
        out
    }
}

/// "nilpotent of class 2", "solvable of length 2", ...
pub fn describe_series(s: &SeriesReport) -> String {
    use crate::constructions::StructureLabel::*;
    match s.label {
        Abelian => "abelian".into(),
        Nilpotent => format!("nilpotent of class {}", s.nilpotency_class.unwrap_or(0)),
        Solvable => format!("solvable of length {}, not nilpotent", s.derived_length.unwrap_or(0)),
        NonSolvable => "not solvable".into(),
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    dim: usize,
    actions: BTreeMap<String, Vec<Vec<String>>>,
}

/// Reads a module file: `dim = m` and one `m x m` matrix per basis
/// element under `[actions]`; omitted elements act by zero.
pub fn parse_module(text: &str, l: &OmegaAlgebra, values: &ParamValues) -> Result<ModuleAction, ReportError> {
    let raw: RawModule = toml::from_str(text).map_err(|e| CatalogError::Syntax(e.to_string()))?;
    let bad = |m: String| ReportError::Usage(format!("module: {m}"));
    let mut actions = vec![Matrix::zeros(raw.dim, raw.dim); l.dim()];
    for (name, rows) in raw.actions {
        let i = l.index_of(&name).ok_or_else(|| bad(format!("unknown basis element '{name}'")))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        parse_expr(s)
                            .and_then(|e| e.eval(&|n| values.get(n).cloned()))
                            .map_err(|e| bad(format!("{name}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = if raw.dim == 0 {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows).map_err(|e| bad(e.to_string()))?
        };
        actions[i] = m;
    }
    Ok(ModuleAction::new(raw.dim, actions)?)
}

fn pair_entries(names: &[String], all_pairs: bool, f: impl Fn(usize, usize) -> Vec<Rational>) -> Vec<((usize, usize), String)> {
    let n = names.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !all_pairs && j <= i {
                continue;
            }
            let v = f(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                out.push(((i, j), format_combination(names, &v)));
            }
        }
    }
    out
}

fn matrix_toml(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| format!("\"{c}\"")).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn cmd_construct(
    kind: ConstructionKind,
    entry: &CatalogEntry,
    values: &ParamValues,
    r: &OperatorMatrix,
    steps: usize,
    module: Option<&ModuleAction>,
) -> Result<ConstructReport, ReportError> {
    let l = entry.specialize(values)?;
    let mut report = ConstructReport {
        kind,
        algebra: entry.name.clone(),
        provenance: Provenance::new(&entry.name, "", r),
        output: Vec::new(),
        checks: Vec::new(),
        series: None,
        halted: None,
    };
    match kind {
        ConstructionKind::Lsa => {
            let a = left_symmetric_from_rb(&l, r)?;
            report.provenance.construction = "left-symmetric product xy = [R(x), y]".into();
            let entries = pair_entries(a.names(), true, |i, j| a.product_basis(i, j).to_vec());
            report.output.push(write_structure(
                &format!("{}-lsa", entry.name),
                "left-symmetric",
                a.names(),
                "products",
                &entries,
                &[],
                &report.provenance,
            ));
            report.checks.push(format!("left symmetry: {} failing triples", a.left_symmetry_failures().len()));
        }
        ConstructionKind::Deform => {
            report.provenance.construction = "deformation [x,y]_R = [Rx,y] + [x,Ry], omega_R(x,y) = omega(Rx,Ry)".into();
            if steps <= 1 {
                let d = omega_deform(&l, r)?;
                report.output.push(write_algebra(&format!("{}_R", entry.name), &d, &report.provenance));
                report.checks.push(format!("omega-Jacobi: {} failing triples", validate_algebra(&d).jacobi_failures.len()));
                report.checks.push(format!(
                    "R compatible Rota-Baxter of weight 0 on the deformation: {}",
                    membership_check(&d, &ConstraintProfile::bc(), r)?
                ));
            } else {
                let it = iterate_deform(&l, r, steps)?;
                for (i, a) in it.algebras.iter().enumerate().skip(1) {
                    let mut p = report.provenance.clone();
                    p.construction = format!("step {i} of iterated deformation with R^{i}");
                    report.output.push(write_algebra(&format!("{}_{i}", entry.name), a, &p));
                }
                report.checks.push(format!(
                    "R compatible Rota-Baxter of weight 0 on L_1: {}",
                    it.r_in_bc_of_first
                ));
                report.halted = it.halted;
            }
        }
        ConstructionKind::Homlie => {
            let g = homlie_from_rb(&l, r)?;
            report.provenance.construction = "Hom-Lie bracket [x,y]_R with twist R".into();
            let entries = pair_entries(g.names(), false, |i, j| g.bracket_basis(i, j).to_vec());
            report.output.push(write_structure(
                &format!("{}-homlie", entry.name),
                "hom-lie",
                g.names(),
                "brackets",
                &entries,
                &[("twist", matrix_toml(g.twist()))],
                &report.provenance,
            ));
            report.checks.push(format!("Hom-Jacobi: {} failing triples", g.hom_jacobi_failures().len()));
            report.series = Some(homlie_structure(&g));
        }
        ConstructionKind::ModuleTwist => {
            let v = module.ok_or_else(|| ReportError::Usage("module-twist needs a module file".into()))?;
            let tw = module_twist(&l, v, r)?;
            report.provenance.construction = "module twist x * v = R(x) v".into();
            let mut text = report.provenance.header_text();
            let _ = writeln!(text, "dim = {}", tw.dim());
            let _ = writeln!(text, "[actions]");
            for (name, m) in l.names().iter().zip(tw.actions()) {
                let _ = writeln!(text, "{name} = {}", matrix_toml(m));
            }
            report.output.push(text);
            report.checks.push(format!(
                "module identity: {} failing pairs",
                validate_module(&l, &tw)?.failures.len()
            ));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub algebra: String,
    pub classification: MapClassification,
    /// Membership in each named variety, by profile name.
    pub varieties: BTreeMap<String, bool>,
}

impl ClassifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let c = &self.classification;
        let mut out = String::new();
        let _ = writeln!(out, "algebra {}", self.algebra);
        let _ = writeln!(out, "Rota-Baxter of weight {}: {}", c.weight, c.is_rota_baxter);
        let _ = writeln!(out, "compatible: {}", c.is_compatible);
        let _ = writeln!(out, "isometric: {}", c.is_isometric);
        let _ = writeln!(out, "derivation: {}", c.is_derivation);
        let _ = writeln!(out, "automorphism: {}", c.is_automorphism);
        let _ = writeln!(out, "square zero: {}", c.is_square_zero);
        let _ = writeln!(out, "invertible: {}", c.is_invertible);
        for (k, v) in &self.varieties {
            let _ = writeln!(out, "in {k}: {v}");
        }
        out
    }
}

pub fn cmd_classify(entry: &CatalogEntry, values: &ParamValues, r: &OperatorMatrix, weight: &Rational) -> Result<ClassifyReport, ReportError> {
    let l = entry.specialize(values)?;
    let classification = classify_map(&l, r, weight)?;
    let mut varieties = BTreeMap::new();
    for (name, p) in ConstraintProfile::named() {
        varieties.insert(name.to_string(), membership_check(&l, &p, r)?);
    }
    Ok(ClassifyReport {
        algebra: entry.name.clone(),
        classification,
        varieties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;
    use crate::reports::parse_catalog;

    fn l1() -> CatalogEntry {
        parse_catalog(
            r#"
[[algebra]]
name = "L1"
basis = ["x", "y", "z"]
brackets = { "x,y" = "y", "y,z" = "z" }
omega = { "x,y" = "1" }
"#,
        )
        .unwrap()
        .remove(0)
    }

    #[test]
    fn solve_reports_dimension() {
        let r = cmd_solve(&l1(), "bc", &ParamValues::new(), None, OrderKind::Grevlex).unwrap();
        assert_eq!(r.dimension, Dimension::Dim(3));
        assert_eq!(r.equations.len(), 12);
        assert!(r.render_text().contains("dimension: 3"));
        assert!(r.ok());
    }

    #[test]
    fn construct_zero_deform() {
        let r = cmd_construct(ConstructionKind::Deform, &l1(), &ParamValues::new(), &Matrix::zeros(3, 3), 1, None).unwrap();
        let back = parse_catalog(&r.output[0]).unwrap();
        let d = back[0].specialize(&ParamValues::new()).unwrap();
        assert_eq!(d, OmegaAlgebra::abelian(&["x", "y", "z"]));
    }

    #[test]
    fn construct_rejection_names_hypothesis() {
        let r = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let err = cmd_construct(ConstructionKind::Lsa, &l1(), &ParamValues::new(), &r, 1, None).unwrap_err();
        assert!(err.to_string().contains("hypothesis"), "{err}");
    }

    #[test]
    fn classify_identity_minus() {
        let r = Matrix::scalar(3, int(-1));
        let c = cmd_classify(&l1(), &ParamValues::new(), &r, &int(1)).unwrap();
        assert!(c.classification.is_rota_baxter && c.classification.is_isometric);
        assert_eq!(c.varieties["bi1"], true);
        assert_eq!(c.varieties["bc"], false);
    }

    #[test]
    fn module_file() {
        let l = l1().specialize(&ParamValues::new()).unwrap();
        let v = parse_module("dim = 1\n[actions]\ny = [[\"1\"]]\n", &l, &ParamValues::new()).unwrap();
        assert!(validate_module(&l, &v).unwrap().is_valid());
    }
}
