//! Command-line front end.
//!
//! Exit codes: 0 success, 1 bad input or operational failure, 2 the
//! requested inverse does not exist. Output is pretty-printed JSON with
//! sorted keys and a trailing newline, so it is byte-for-byte reproducible.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::factorization::full_rank_factorize;
use crate::geninv::{bundle_missing_reason, coexistence_bundle, CoreMode, InverseKind};
use crate::linalg::{matrix_from_json, FieldDescriptor, Matrix};
use crate::oracle::{
    enumerate_inverses, exhaustive_agreement, exhaustive_agreement_parallel, OracleQuery,
    DEFAULT_BUDGET,
};
use crate::verify::{check_decompositions, check_equations, check_factorization_triples, EquationSpec};

pub const BUDGET_ENV: &str = "CORESTAR_ORACLE_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "corestar", version, about = "Exact generalized inverses over Q, Q(i) and GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full-rank factorization A = B C.
    Factorize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute one generalized inverse, or the coexistence bundle.
    Invert {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short = 'n', long = "n", default_value_t = 2)]
        n: u32,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a candidate against an equation system.
    Verify {
        /// Matrix JSON for A.
        a: PathBuf,
        /// Matrix JSON or the output of `invert`.
        x: PathBuf,
        #[arg(long, value_enum, conflicts_with = "system")]
        kind: Option<KindArg>,
        /// core5, core3, dual5, dual3, group, or a Penrose subset such as 1,3.
        #[arg(long)]
        system: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Kernel/image direct-sum statements.
    Decompose {
        #[arg(short = 'n', long = "n", default_value_t = 2)]
        n: u32,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The three factorizations of (A*)^2 A (core) or A (A*)^2 (dual).
    Triples {
        #[arg(long, value_enum, default_value_t = ModeArg::Core)]
        mode: ModeArg,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force ground truth over GF(p).
    Oracle {
        #[command(subcommand)]
        action: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Compare every criterion with brute force over all m x m matrices.
    Sweep {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(short = 'n', long = "n", default_value_t = 2)]
        n: u32,
        /// Split the sweep into this many index ranges run in parallel.
        #[arg(long, default_value_t = 1)]
        chunks: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every solution of an equation system for one matrix.
    Enumerate {
        #[arg(long)]
        system: String,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "13")]
    Inner13,
    #[value(name = "14")]
    Inner14,
    Group,
    Mp,
    Core,
    Dualcore,
    Bundle,
}

impl KindArg {
    fn single(self) -> Option<InverseKind> {
        match self {
            KindArg::Inner13 => Some(InverseKind::Inner13),
            KindArg::Inner14 => Some(InverseKind::Inner14),
            KindArg::Group => Some(InverseKind::Group),
            KindArg::Mp => Some(InverseKind::MoorePenrose),
            KindArg::Core => Some(InverseKind::Core),
            KindArg::Dualcore => Some(InverseKind::DualCore),
            KindArg::Bundle => None,
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        if name == "bundle" {
            return Some(KindArg::Bundle);
        }
        InverseKind::from_name(name).map(|k| match k {
            InverseKind::Inner13 => KindArg::Inner13,
            InverseKind::Inner14 => KindArg::Inner14,
            InverseKind::Group => KindArg::Group,
            InverseKind::MoorePenrose => KindArg::Mp,
            InverseKind::Core => KindArg::Core,
            InverseKind::DualCore => KindArg::Dualcore,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Core,
    Dual,
}

/// What a run produced: exit code plus the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(message: impl std::fmt::Display) -> Self {
        Outcome { code: 1, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Run with the oracle budget taken from `CORESTAR_ORACLE_BUDGET`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_budget(args, std::env::var(BUDGET_ENV).ok().as_deref())
}

/// Run with an explicit budget override (the raw environment value).
pub fn run_with_budget<I, T>(args: I, budget: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let budget = match parse_budget(budget) {
        Ok(b) => b,
        Err(e) => return Outcome::failure(e),
    };
    match execute(cli.command, budget) {
        Ok((code, doc, output)) => {
            let text = render(&doc);
            match output {
                Some(path) => match fs::write(&path, &text) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome::failure(format!("cannot write {}: {e}", path.display())),
                },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => Outcome::failure(e),
    }
}

fn parse_budget(raw: Option<&str>) -> Result<u128> {
    match raw {
        None => Ok(DEFAULT_BUDGET),
        Some(text) => match text.trim().parse::<u128>() {
            Ok(b) if b > 0 => Ok(b),
            _ => Err(Error::Json(format!("{BUDGET_ENV} must be a positive integer, got {text:?}"))),
        },
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Json(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    matrix_from_json(&read_json(path)?)
}

fn entries_json(m: &Matrix) -> Value {
    json!(m.to_text_rows())
}

/// Parse a bare entries array of a known shape.
fn matrix_from_entries(field: FieldDescriptor, shape: (usize, usize), value: &Value) -> Result<Matrix> {
    let rows = value.as_array().ok_or_else(|| Error::Json("entries must be an array".into()))?;
    if rows.len() != shape.0 {
        return Err(Error::Dimension(format!("expected {} rows, found {}", shape.0, rows.len())));
    }
    let mut entries = Vec::with_capacity(shape.0 * shape.1);
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::Json("rows must be arrays".into()))?;
        if row.len() != shape.1 {
            return Err(Error::Dimension(format!("expected {} columns, found {}", shape.1, row.len())));
        }
        for cell in row {
            let text = cell.as_str().ok_or_else(|| Error::Json("entries must be strings".into()))?;
            entries.push(field.parse(text)?);
        }
    }
    Matrix::from_entries(field, shape.0, shape.1, entries)
}

fn require_core_exponent(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::Exponent { min: 2, got: n })
    } else {
        Ok(())
    }
}

type Executed = (i32, Value, Option<PathBuf>);

fn execute(command: Command, budget: u128) -> Result<Executed> {
    match command {
        Command::Factorize { input, output } => {
            let a = read_matrix(&input)?;
            Ok((0, full_rank_factorize(&a).to_json(), output))
        }
        Command::Invert { kind, n, input, output } => {
            require_core_exponent(n)?;
            let a = read_matrix(&input)?;
            let (code, doc) = invert(&a, kind, n)?;
            Ok((code, doc, output))
        }
        Command::Verify { a, x, kind, system, output } => {
            let a = read_matrix(&a)?;
            let x = read_json(&x)?;
            Ok((0, verify(&a, &x, kind, system.as_deref())?, output))
        }
        Command::Decompose { n, input, output } => {
            let a = read_matrix(&input)?;
            Ok((0, check_decompositions(&a, n)?.to_json(), output))
        }
        Command::Triples { mode, input, output } => {
            let a = read_matrix(&input)?;
            let mode = match mode {
                ModeArg::Core => CoreMode::Core,
                ModeArg::Dual => CoreMode::Dual,
            };
            Ok((0, check_factorization_triples(&a, mode)?.to_json(), output))
        }
        Command::Oracle { action } => match action {
            OracleCommand::Sweep { p, m, n, chunks, output } => {
                let report = if chunks <= 1 {
                    exhaustive_agreement(p, m, n, budget)?
                } else {
                    exhaustive_agreement_parallel(p, m, n, budget, chunks)?
                };
                Ok((0, report.to_json(), output))
            }
            OracleCommand::Enumerate { system, input, output } => {
                let a = read_matrix(&input)?;
                let spec = EquationSpec::parse(&system)?;
                let sols = enumerate_inverses(&OracleQuery::new(a, spec.clone()).with_budget(budget))?;
                let doc = json!({
                    "system": spec.name(),
                    "count": sols.len(),
                    "solutions": sols.iter().map(entries_json).collect::<Vec<_>>(),
                });
                Ok((0, doc, output))
            }
        },
    }
}

fn invert(a: &Matrix, kind: KindArg, n: u32) -> Result<(i32, Value)> {
    let missing = |reason: &str| (2, json!({ "exists": false, "reason": reason }));
    match kind.single() {
        Some(k) => {
            if let Some(reason) = k.missing_reason(a)? {
                return Ok(missing(reason));
            }
            let x = k.compute(a)?.expect("criteria hold, so the formula applies");
            Ok((0, json!({ "exists": true, "kind": k.name(), "inverse": entries_json(&x) })))
        }
        None => {
            if let Some(reason) = bundle_missing_reason(a, n)? {
                return Ok(missing(reason));
            }
            let b = coexistence_bundle(a, n)?.expect("witnesses exist");
            Ok((
                0,
                json!({
                    "exists": true,
                    "kind": "bundle",
                    "n": n,
                    "core": entries_json(&b.core),
                    "dual_core": entries_json(&b.dual_core),
                    "mp": entries_json(&b.mp),
                    "group": entries_json(&b.group),
                }),
            ))
        }
    }
}

fn verify(a: &Matrix, x: &Value, kind: Option<KindArg>, system: Option<&str>) -> Result<Value> {
    let obj = x.as_object().ok_or_else(|| Error::Json("candidate must be a JSON object".into()))?;
    let shape = (a.cols(), a.rows());

    // A plain matrix needs an explicit system or kind.
    if obj.contains_key("field") {
        let xm = matrix_from_json(x)?;
        let spec = match (system, kind.and_then(KindArg::single)) {
            (Some(s), _) => EquationSpec::parse(s)?,
            (None, Some(k)) => k.defining_system(),
            (None, None) => {
                return Err(Error::Json("verify needs --kind or --system for a plain matrix".into()))
            }
        };
        return Ok(check_equations(a, &xm, &spec)?.to_json());
    }

    if obj.get("exists") == Some(&Value::Bool(false)) {
        return Err(Error::Json("candidate file records a nonexistent inverse".into()));
    }
    let recorded = obj.get("kind").and_then(Value::as_str).and_then(KindArg::from_name);
    let kind = kind
        .or(recorded)
        .ok_or_else(|| Error::Json("cannot tell which inverse the candidate is".into()))?;

    match kind.single() {
        Some(k) => {
            let xm = matrix_from_entries(a.field(), shape, obj.get("inverse").unwrap_or(&Value::Null))?;
            let spec = match system {
                Some(s) => EquationSpec::parse(s)?,
                None => k.defining_system(),
            };
            Ok(check_equations(a, &xm, &spec)?.to_json())
        }
        None => {
            let members = [
                ("core", EquationSpec::CoreFive),
                ("dual_core", EquationSpec::DualFive),
                ("mp", EquationSpec::penrose(&[1, 2, 3, 4])),
                ("group", EquationSpec::GroupSystem),
            ];
            let mut out = Map::new();
            let mut all = true;
            for (key, spec) in members {
                let xm = matrix_from_entries(a.field(), shape, obj.get(key).unwrap_or(&Value::Null))?;
                let report = check_equations(a, &xm, &spec)?;
                all &= report.pass();
                out.insert(key.to_string(), report.to_json());
            }
            out.insert("pass".into(), json!(all));
            Ok(Value::Object(out))
        }
    }
}
