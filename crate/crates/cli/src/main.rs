use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rota_omega::exactpoly::parse_expr;
use rota_omega::reports::{
    self, cmd_classify, cmd_construct, cmd_solve, find, load_candidates, load_expectations, parse_assignments,
    parse_catalog, parse_expectations, parse_module, parse_operator, parse_order, run_table, shipped, CatalogEntry,
    CatalogError, ConstructionKind, ParamValues, ReportError, TableOptions,
};
use rota_omega::Rational;

#[derive(Parser)]
#[command(name = "rota-omega", version, about = "Rota-Baxter operators on omega-Lie algebras")]
struct Cli {
    /// Catalog of algebras; defaults to the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a catalog file.
    Validate { file: Option<PathBuf> },
    /// Generate and analyze the operator variety of one algebra.
    Solve {
        algebra: String,
        /// One of b, bc, bi1, bs.
        profile: String,
        /// Value for the parameter `alpha`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Candidate components with certificates.
        #[arg(long)]
        candidates: Option<PathBuf>,
        #[arg(long, default_value = "grevlex")]
        order: String,
        /// Further parameter values as name=value.
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Reproduce a table of variety data against an expectations file.
    Table {
        id: u32,
        /// Expectations file; defaults to the built-in one for the table.
        #[arg(long)]
        expect: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include wall-clock times in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Build a structure from a Rota-Baxter operator.
    Construct {
        /// One of lsa, deform, homlie, module-twist.
        kind: String,
        algebra: String,
        /// Operator matrix, one row per line.
        #[arg(long)]
        op: PathBuf,
        /// Module for module-twist.
        #[arg(long)]
        module: Option<PathBuf>,
        /// Number of deformation steps.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Parameter values as name=value, for the operator and the algebra.
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Check which operator identities a matrix satisfies.
    Classify {
        algebra: String,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
}

enum Failure {
    /// Reported findings (FAIL cells, rejected operators, invalid entries).
    Findings(String),
    /// Malformed input or usage.
    Usage(String),
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match &e {
            ReportError::Construction(_) => Failure::Findings(e.to_string()),
            ReportError::Catalog(CatalogError::Jacobi { .. }) => Failure::Findings(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        ReportError::from(e).into()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn catalog(cli: &Cli) -> Result<Vec<CatalogEntry>, Failure> {
    Ok(match &cli.catalog {
        Some(p) => parse_catalog(&read(p)?)?,
        None => parse_catalog(shipped::CATALOG)?,
    })
}

fn all_params(alpha: &Option<String>, params: &[String]) -> Result<ParamValues, Failure> {
    let mut values = parse_assignments(params)?;
    if let Some(a) = alpha {
        let v: Rational = parse_expr(a)
            .and_then(|e| e.eval(&|_| None))
            .map_err(|e| Failure::Usage(format!("--alpha: {e}")))?;
        values.insert("alpha".into(), v);
    }
    Ok(values)
}

/// Keeps only the values that name parameters of the algebra.
fn algebra_params(entry: &CatalogEntry, values: &ParamValues) -> ParamValues {
    values.iter().filter(|(k, _)| entry.params.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect()
}

fn emit(json: bool, text: String, json_text: String) {
    let out = if json { json_text + "\n" } else { text };
    let mut stdout = std::io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("rota-omega: {e}");
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Validate { file } => {
            let text = match file.as_ref().or(cli.catalog.as_ref()) {
                Some(p) => read(p)?,
                None => shipped::CATALOG.to_string(),
            };
            let entries = parse_catalog(&text)?;
            let rows: Vec<serde_json::Value> = entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "name": e.name,
                        "dim": e.basis.len(),
                        "params": e.params,
                        "external_source": e.external_source,
                    })
                })
                .collect();
            let mut text = String::new();
            for e in &entries {
                let status = if e.external_source {
                    "external-source stub".to_string()
                } else if e.is_parametric() {
                    format!("valid at {} sample specializations", e.sample_specializations().len())
                } else {
                    "valid".to_string()
                };
                text.push_str(&format!("{:<14} dim {:<2} {status}\n", e.name, e.basis.len()));
            }
            emit(cli.json, text, serde_json::to_string_pretty(&rows).expect("json"));
            Ok(())
        }
        Command::Solve {
            algebra,
            profile,
            alpha,
            candidates,
            order,
            params,
        } => {
            let cat = catalog(cli)?;
            let entry = find(&cat, algebra)?;
            let values = all_params(alpha, params)?;
            let cands = candidates.as_ref().map(|p| load_candidates(p)).transpose()?;
            let report = cmd_solve(entry, profile, &values, cands.as_deref(), parse_order(order)?)?;
            emit(cli.json, report.render_text(), report.to_json());
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Findings("candidate components did not verify".into()))
            }
        }
        Command::Table {
            id,
            expect,
            jobs,
            timing,
        } => {
            let cat = catalog(cli)?;
            let exp = match expect {
                Some(p) => load_expectations(p)?,
                None => parse_expectations(
                    shipped::table(*id).ok_or_else(|| Failure::Usage(format!("no built-in table {id}")))?,
                )?,
            };
            if let Some(t) = exp.table {
                if t != *id {
                    return Err(Failure::Usage(format!("expectations describe table {t}, not {id}")));
                }
            }
            let options = TableOptions {
                jobs: (*jobs).max(1),
                timing: *timing,
                ..TableOptions::default()
            };
            let report = run_table(&cat, &exp, &options);
            emit(cli.json, report.render_text(), report.to_json());
            if report.has_failures() {
                Err(Failure::Findings(format!("{} failing cells", report.count(reports::Outcome::Fail))))
            } else {
                Ok(())
            }
        }
        Command::Construct {
            kind,
            algebra,
            op,
            module,
            steps,
            alpha,
            params,
        } => {
            let cat = catalog(cli)?;
            let entry = find(&cat, algebra)?;
            let kind: ConstructionKind = kind.parse()?;
            let values = all_params(alpha, params)?;
            let l_values = algebra_params(entry, &values);
            let l = entry.specialize(&l_values)?;
            let r = parse_operator(&read(op)?, l.dim(), &values)?;
            let m = module.as_ref().map(|p| read(p).and_then(|t| Ok(parse_module(&t, &l, &values)?))).transpose()?;
            let report = cmd_construct(kind, entry, &l_values, &r, *steps, m.as_ref())?;
            emit(cli.json, report.render_text(), report.to_json());
            Ok(())
        }
        Command::Classify {
            algebra,
            op,
            weight,
            alpha,
            params,
        } => {
            let cat = catalog(cli)?;
            let entry = find(&cat, algebra)?;
            let values = all_params(alpha, params)?;
            let l_values = algebra_params(entry, &values);
            let n = entry.basis.len();
            let r = parse_operator(&read(op)?, n, &values)?;
            let w: Rational = parse_expr(weight)
                .and_then(|e| e.eval(&|_| None))
                .map_err(|e| Failure::Usage(format!("--weight: {e}")))?;
            let report = cmd_classify(entry, &l_values, &r, &w)?;
            emit(cli.json, report.render_text(), report.to_json());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Findings(m)) => {
            eprintln!("rota-omega: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("rota-omega: {m}");
            ExitCode::from(2)
        }
    }
}
