//! Catalog files: named ω-Lie algebras in TOML.
//!
//! ```toml
//! [[algebra]]
//! name = "L1"
//! basis = ["x", "y", "z"]
//! brackets = { "x,y" = "y", "y,z" = "z" }
//! omega = { "x,y" = "1" }
//! ```
//!
//! Bracket values are linear in the basis with coefficients that may use
//! the entry's `params`. Entries with `external_source = true` carry only a
//! name and citation; their structure constants are not shipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{parse_expr, parse_rational, Expr, PolyError, PolyRing, Rational};
use crate::omega::{format_combination, validate_algebra, Matrix, OmegaAlgebra, OperatorMatrix};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(String),
    #[error("line {line}: algebra '{algebra}', {field}: {message}")]
    Field {
        line: usize,
        algebra: String,
        field: String,
        message: String,
    },
    #[error("algebra '{algebra}'{at}: omega-Jacobi fails on ({}, {}, {})", triple.0, triple.1, triple.2)]
    Jacobi {
        algebra: String,
        at: String,
        triple: (String, String, String),
    },
    #[error("algebra '{algebra}'{at}: {message}")]
    Invalid {
        algebra: String,
        at: String,
        message: String,
    },
    #[error("unknown algebra '{0}'")]
    UnknownAlgebra(String),
    #[error("algebra '{0}' is an external-source stub without structure constants")]
    External(String),
    #[error("algebra '{algebra}': {message}")]
    Params { algebra: String, message: String },
    #[error("operator: {0}")]
    Operator(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    #[serde(default)]
    algebra: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: toml::Spanned<String>,
    #[serde(default)]
    source: String,
    #[serde(default)]
    external_source: bool,
    #[serde(default)]
    basis: Vec<String>,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    constraints: String,
    #[serde(default)]
    excluded: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    samples: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    brackets: BTreeMap<String, toml::Spanned<String>>,
    #[serde(default)]
    omega: BTreeMap<String, toml::Spanned<String>>,
}

/// Linear combination of basis vectors with parameter-dependent coefficients.
#[derive(Clone, Debug)]
struct Entry {
    pair: (usize, usize),
    expr: Expr,
    text: String,
}

/// One catalog algebra, possibly depending on rational parameters.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub source: String,
    pub external_source: bool,
    pub basis: Vec<String>,
    pub params: Vec<String>,
    /// Human-readable side conditions on the parameters.
    pub constraints: String,
    excluded: BTreeMap<String, Vec<Rational>>,
    samples: BTreeMap<String, Vec<Rational>>,
    brackets: Vec<Entry>,
    omega: Vec<Entry>,
}

/// Values used for a parameter when the catalog does not list samples.
pub fn default_parameter_samples() -> Vec<Rational> {
    ["2", "-1", "1/2"].iter().map(|s| parse_rational(s).expect("literal")).collect()
}

pub type ParamValues = BTreeMap<String, Rational>;

impl CatalogEntry {
    pub fn is_parametric(&self) -> bool {
        !self.params.is_empty()
    }

    /// Sample values for `param`, minus excluded ones.
    pub fn samples_for(&self, param: &str) -> Vec<Rational> {
        let base = self.samples.get(param).cloned().unwrap_or_else(default_parameter_samples);
        let excluded = self.excluded.get(param).cloned().unwrap_or_default();
        base.into_iter().filter(|v| !excluded.contains(v)).collect()
    }

    /// Every combination of sample values, in lexicographic parameter order.
    pub fn sample_specializations(&self) -> Vec<ParamValues> {
        let mut out = vec![ParamValues::new()];
        for p in &self.params {
            let vals = self.samples_for(p);
            out = out
                .into_iter()
                .flat_map(|m| {
                    vals.iter().map(move |v| {
                        let mut m = m.clone();
                        m.insert(p.clone(), v.clone());
                        m
                    })
                })
                .collect();
        }
        out
    }

    fn check_params(&self, values: &ParamValues) -> Result<(), CatalogError> {
        let err = |message: String| CatalogError::Params {
            algebra: self.name.clone(),
            message,
        };
        for p in &self.params {
            let v = values.get(p).ok_or_else(|| err(format!("missing value for parameter '{p}'")))?;
            if self.excluded.get(p).is_some_and(|ex| ex.contains(v)) {
                return Err(err(format!("{p} = {v} is excluded ({})", self.constraints)));
            }
        }
        if let Some(extra) = values.keys().find(|k| !self.params.contains(k)) {
            return Err(err(format!("unknown parameter '{extra}'")));
        }
        Ok(())
    }

    /// The algebra at the given parameter values, validated.
    pub fn specialize(&self, values: &ParamValues) -> Result<OmegaAlgebra, CatalogError> {
        if self.external_source {
            return Err(CatalogError::External(self.name.clone()));
        }
        self.check_params(values)?;
        let at = describe_params(values);
        let invalid = |message: String| CatalogError::Invalid {
            algebra: self.name.clone(),
            at: at.clone(),
            message,
        };
        let mut l = OmegaAlgebra::abelian(&self.basis).with_params(values.iter().map(|(k, v)| (k.clone(), v.clone())).collect());
        let ring = PolyRing::new(&self.basis, crate::exactpoly::OrderKind::Grevlex).map_err(|e| invalid(e.to_string()))?;
        for e in &self.brackets {
            let v = linear_coordinates(&e.expr, &ring, values).map_err(|m| invalid(format!("bracket {}: {m}", e.text)))?;
            l.set_bracket(e.pair.0, e.pair.1, v);
        }
        for e in &self.omega {
            let c = e
                .expr
                .eval(&|n| values.get(n).cloned())
                .map_err(|m| invalid(format!("omega {}: {m}", e.text)))?;
            l.set_omega(e.pair.0, e.pair.1, c);
        }
        let v = validate_algebra(&l);
        if let Some(f) = v.jacobi_failures.first() {
            return Err(CatalogError::Jacobi {
                algebra: self.name.clone(),
                at,
                triple: f.names.clone(),
            });
        }
        Ok(l)
    }
}

fn describe_params(values: &ParamValues) -> String {
    if values.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        format!(" at {}", parts.join(", "))
    }
}

/// Substitutes parameter values, then reads off the coordinates of a
/// linear form over the basis.
fn linear_coordinates(expr: &Expr, ring: &std::sync::Arc<PolyRing>, values: &ParamValues) -> Result<Vec<Rational>, String> {
    let e = substitute_params(expr, values);
    let p = e.to_poly(ring).map_err(|e| e.to_string())?;
    let mut out = vec![Rational::zero(); ring.nvars()];
    for (c, m) in p.terms() {
        if m.degree() != 1 {
            return Err("not linear in the basis".into());
        }
        let i = m.exponents().iter().position(|&e| e == 1).expect("degree one");
        out[i] = c.clone();
    }
    Ok(out)
}

pub(crate) fn substitute_params(expr: &Expr, values: &ParamValues) -> Expr {
    let s = |e: &Expr| Box::new(substitute_params(e, values));
    match expr {
        Expr::Var(n) => match values.get(n) {
            Some(v) => Expr::Num(v.clone()),
            None => expr.clone(),
        },
        Expr::Num(_) => expr.clone(),
        Expr::Neg(a) => Expr::Neg(s(a)),
        Expr::Add(a, b) => Expr::Add(s(a), s(b)),
        Expr::Sub(a, b) => Expr::Sub(s(a), s(b)),
        Expr::Mul(a, b) => Expr::Mul(s(a), s(b)),
        Expr::Div(a, b) => Expr::Div(s(a), s(b)),
        Expr::Pow(a, k) => Expr::Pow(s(a), *k),
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Parses and validates a catalog. Parametric entries are validated at
/// each of their sample specializations.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let raw: RawCatalog = toml::from_str(text).map_err(|e| CatalogError::Syntax(e.to_string()))?;
    let mut out: Vec<CatalogEntry> = Vec::new();
    for r in raw.algebra {
        let name = r.name.get_ref().clone();
        let name_line = line_of(text, r.name.span().start);
        let field_err = |line: usize, field: &str, message: String| CatalogError::Field {
            line,
            algebra: name.clone(),
            field: field.to_string(),
            message,
        };
        if out.iter().any(|e| e.name == name) {
            return Err(field_err(name_line, "name", "duplicate algebra name".into()));
        }
        if r.external_source {
            out.push(CatalogEntry {
                name,
                source: r.source,
                external_source: true,
                basis: r.basis,
                params: r.params,
                constraints: r.constraints,
                excluded: BTreeMap::new(),
                samples: BTreeMap::new(),
                brackets: Vec::new(),
                omega: Vec::new(),
            });
            continue;
        }
        if r.basis.is_empty() {
            return Err(field_err(name_line, "basis", "empty basis".into()));
        }
        let mut symbols = r.basis.clone();
        symbols.extend(r.params.iter().cloned());
        PolyRing::new(&symbols, crate::exactpoly::OrderKind::Grevlex).map_err(|e| field_err(name_line, "basis", e.to_string()))?;

        let index = |s: &str| r.basis.iter().position(|b| b == s.trim());
        let read_entries = |field: &str, map: &BTreeMap<String, toml::Spanned<String>>| -> Result<Vec<Entry>, CatalogError> {
            let mut entries = Vec::new();
            for (key, val) in map {
                let line = line_of(text, val.span().start);
                let key_field = format!("{field}.\"{key}\"");
                let pair = match key.split_once(',') {
                    Some((a, b)) => match (index(a), index(b)) {
                        (Some(i), Some(j)) if i != j => (i, j),
                        _ => return Err(field_err(line, &key_field, "expected two distinct basis names 'a,b'".into())),
                    },
                    None => return Err(field_err(line, &key_field, "expected a key of the form 'a,b'".into())),
                };
                let expr = parse_expr(val.get_ref()).map_err(|e| field_err(line, &key_field, e.to_string()))?;
                check_symbols(&expr, &symbols).map_err(|e| field_err(line, &key_field, e.to_string()))?;
                entries.push(Entry {
                    pair,
                    expr,
                    text: format!("{key} = {}", val.get_ref()),
                });
            }
            Ok(entries)
        };
        let brackets = read_entries("brackets", &r.brackets)?;
        let omega = read_entries("omega", &r.omega)?;
        let read_values = |field: &str, m: BTreeMap<String, Vec<String>>| -> Result<BTreeMap<String, Vec<Rational>>, CatalogError> {
            m.into_iter()
                .map(|(k, vs)| {
                    if !r.params.contains(&k) {
                        return Err(field_err(name_line, field, format!("unknown parameter '{k}'")));
                    }
                    let vals = vs
                        .iter()
                        .map(|s| parse_rational(s).map_err(|e| field_err(name_line, field, e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok((k, vals))
                })
                .collect()
        };
        let entry = CatalogEntry {
            name: name.clone(),
            source: r.source,
            external_source: false,
            basis: r.basis.clone(),
            params: r.params.clone(),
            constraints: r.constraints,
            excluded: read_values("excluded", r.excluded)?,
            samples: read_values("samples", r.samples)?,
            brackets,
            omega,
        };
        for values in entry.sample_specializations() {
            entry.specialize(&values)?;
        }
        out.push(entry);
    }
    Ok(out)
}

fn check_symbols(e: &Expr, symbols: &[String]) -> Result<(), PolyError> {
    match e {
        Expr::Var(n) if !symbols.contains(n) => Err(PolyError::UnknownVariable(n.clone())),
        Expr::Var(_) | Expr::Num(_) => Ok(()),
        Expr::Neg(a) | Expr::Pow(a, _) => check_symbols(a, symbols),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            check_symbols(a, symbols)?;
            check_symbols(b, symbols)
        }
    }
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text)
}

pub fn find<'a>(catalog: &'a [CatalogEntry], name: &str) -> Result<&'a CatalogEntry, CatalogError> {
    catalog
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownAlgebra(name.to_string()))
}

/// Parses `name=value` assignments, as given on the command line.
pub fn parse_assignments<S: AsRef<str>>(items: &[S]) -> Result<ParamValues, CatalogError> {
    let mut out = ParamValues::new();
    for item in items {
        let item = item.as_ref();
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CatalogError::Operator(format!("expected name=value, found '{item}'")))?;
        let v = parse_expr(v.trim())
            .and_then(|e| e.eval(&|_| None))
            .map_err(|e| CatalogError::Operator(format!("{item}: {e}")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// Reads an operator matrix: one row per non-empty line, entries separated
/// by whitespace or commas. Entries are rational expressions in `values`;
/// `#` starts a comment. Row `i` holds the coordinates of `R(e_i)`.
pub fn parse_operator(text: &str, n: usize, values: &ParamValues) -> Result<OperatorMatrix, CatalogError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                parse_expr(s)
                    .and_then(|e| e.eval(&|name| values.get(name).cloned()))
                    .map_err(|e| CatalogError::Operator(format!("line {}: {e}", lineno + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(CatalogError::Operator(format!(
                "line {}: expected {n} entries, found {}",
                lineno + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CatalogError::Operator(format!("expected {n} rows, found {}", rows.len())));
    }
    Matrix::from_rows(rows).map_err(|e| CatalogError::Operator(e.to_string()))
}

/// Describes where a constructed structure came from; written as comments
/// ahead of the serialized entry.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub source_algebra: String,
    pub construction: String,
    pub operator: Vec<Vec<String>>,
}

impl Provenance {
    pub fn new(source_algebra: &str, construction: &str, r: &OperatorMatrix) -> Self {
        Provenance {
            source_algebra: source_algebra.to_string(),
            construction: construction.to_string(),
            operator: r.to_rows().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn header_text(&self) -> String {
        let rows: Vec<String> = self.operator.iter().map(|r| r.join(" ")).collect();
        format!(
            "# source algebra: {}\n# construction: {}\n# operator rows: {}\n",
            self.source_algebra,
            self.construction,
            rows.join(" | ")
        )
    }
}

fn toml_string(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn write_pairs(out: &mut String, field: &str, names: &[String], entries: &[((usize, usize), String)]) {
    let items: Vec<String> = entries
        .iter()
        .map(|((i, j), v)| format!("{} = {}", toml_string(&format!("{},{}", names[*i], names[*j])), toml_string(v)))
        .collect();
    let _ = writeln!(out, "{field} = {{ {} }}", items.join(", "));
}

fn write_header(out: &mut String, name: &str, names: &[String], provenance: &Provenance) {
    out.push_str(&provenance.header_text());
    let _ = writeln!(out, "[[algebra]]");
    let _ = writeln!(out, "name = {}", toml_string(name));
    let _ = writeln!(
        out,
        "source = {}",
        toml_string(&format!("{} of {}", provenance.construction, provenance.source_algebra))
    );
    let basis: Vec<String> = names.iter().map(|b| toml_string(b)).collect();
    let _ = writeln!(out, "basis = [{}]", basis.join(", "));
}

/// Catalog text for an ω-Lie algebra, loadable by [`parse_catalog`].
pub fn write_algebra(name: &str, l: &OmegaAlgebra, provenance: &Provenance) -> String {
    let mut out = String::new();
    write_header(&mut out, name, l.names(), provenance);
    let n = l.dim();
    let mut brackets = Vec::new();
    let mut omega = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = l.bracket_basis(i, j);
            if b.iter().any(|c| !c.is_zero()) {
                brackets.push(((i, j), format_combination(l.names(), b)));
            }
            let w = l.omega_basis(i, j);
            if !w.is_zero() {
                omega.push(((i, j), w.to_string()));
            }
        }
    }
    write_pairs(&mut out, "brackets", l.names(), &brackets);
    write_pairs(&mut out, "omega", l.names(), &omega);
    out
}

/// Catalog-style text for a non-ω-Lie structure: products (or brackets)
/// as `key = value` pairs plus optional extra fields. The result is
/// informational and is rejected by [`parse_catalog`] because of its
/// `kind` field.
pub fn write_structure(
    name: &str,
    kind: &str,
    names: &[String],
    field: &str,
    entries: &[((usize, usize), String)],
    extra: &[(&str, String)],
    provenance: &Provenance,
) -> String {
    let mut out = String::new();
    write_header(&mut out, name, names, provenance);
    let _ = writeln!(out, "kind = {}", toml_string(kind));
    write_pairs(&mut out, field, names, entries);
    for (k, v) in extra {
        let _ = writeln!(out, "{k} = {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    const L1: &str = r#"
[[algebra]]
name = "L1"
basis = ["x", "y", "z"]
brackets = { "x,y" = "y", "y,z" = "z" }
omega = { "x,y" = "1" }
"#;

    #[test]
    fn empty_catalog() {
        assert!(parse_catalog("").unwrap().is_empty());
    }

    #[test]
    fn single_entry() {
        let c = parse_catalog(L1).unwrap();
        assert_eq!(c.len(), 1);
        let l = c[0].specialize(&ParamValues::new()).unwrap();
        assert_eq!(l.bracket_basis(1, 2), &[int(0), int(0), int(1)]);
        assert_eq!(l.bracket_basis(2, 1), &[int(0), int(0), int(-1)]);
        assert_eq!(l.omega_basis(0, 1), &int(1));
    }

    #[test]
    fn jacobi_typo_names_triple() {
        let text = L1.replace(r#""y,z" = "z""#, r#""y,z" = "2*z""#);
        let err = parse_catalog(&text).unwrap_err();
        assert!(err.to_string().contains("(x, y, z)"), "{err}");
    }

    #[test]
    fn field_errors_carry_line() {
        let text = L1.replace(r#""x,y" = "y""#, r#""x,y" = "y +""#);
        let err = parse_catalog(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("line 5:") && msg.contains("brackets"), "{msg}");
        let text = L1.replace(r#""x,y" = "y""#, r#""x,w" = "y""#);
        assert!(parse_catalog(&text).is_err());
    }

    #[test]
    fn parametric_entry() {
        let text = r#"
[[algebra]]
name = "P"
basis = ["a", "b"]
params = ["t"]
excluded = { t = ["0"] }
samples = { t = ["0", "3"] }
brackets = { "a,b" = "t*b" }
"#;
        let c = parse_catalog(text).unwrap();
        assert_eq!(c[0].samples_for("t"), vec![int(3)]);
        let mut v = ParamValues::new();
        v.insert("t".into(), rat(1, 2));
        assert_eq!(c[0].specialize(&v).unwrap().bracket_basis(0, 1), &[int(0), rat(1, 2)]);
        v.insert("t".into(), int(0));
        assert!(c[0].specialize(&v).is_err());
    }

    #[test]
    fn external_stub() {
        let c = parse_catalog("[[algebra]]\nname = \"B\"\nexternal_source = true\n").unwrap();
        assert!(matches!(c[0].specialize(&ParamValues::new()), Err(CatalogError::External(_))));
    }

    #[test]
    fn operator_text() {
        let mut v = ParamValues::new();
        v.insert("a".into(), int(2));
        let r = parse_operator("0 a a^2/4\n0, 0, 0 # comment\n\n0 0 -1/2\n", 3, &v).unwrap();
        assert_eq!(r.get(0, 2), &int(1));
        assert_eq!(r.get(2, 2), &rat(-1, 2));
        assert!(parse_operator("0 b 0\n0 0 0\n0 0 0", 3, &v).is_err());
    }

    #[test]
    fn write_then_parse() {
        let l = parse_catalog(L1).unwrap()[0].specialize(&ParamValues::new()).unwrap();
        let prov = Provenance::new("L1", "identity", &Matrix::identity(3));
        let text = write_algebra("L1-copy", &l, &prov);
        assert!(text.starts_with("# source algebra: L1\n"));
        let back = parse_catalog(&text).unwrap()[0].specialize(&ParamValues::new()).unwrap();
        assert_eq!(back, l);
    }
}
