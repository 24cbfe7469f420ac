//! Argument parsing and command execution.
//!
//! [`run`] never prints or exits; it returns the text for stdout and stderr
//! together with the exit code, so the binary is a thin wrapper and tests
//! can drive every command in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cliffq::reference::{discrepancy_report, DiscrepancyReport};
use cliffq::verifier::{run_suite, CheckConfig, CheckReport, Status, Strategy};
use cliffq::{detect_qtype, emit_table, FieldTag, Multivector, OpKind, QType, Signature, SubspacePattern};
use serde::Serialize;
use thiserror::Error;

use crate::document::{DocumentError, MultivectorDocument};
use crate::expr::{parse_expression, ParseError};

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "cliffq", version, about = "Quaternion-type Clifford algebra verifier")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification checks in Cl(p,q).
    Verify(VerifyArgs),
    /// Print a 15x15 quaternion-type composition table.
    Table(TableArgs),
    /// Classify a multivector by quaternion type.
    Type(TypeArgs),
    /// Evaluate a product, bracket, conjugate or exponential.
    Eval(EvalArgs),
    /// Compare the transcribed reference tables with the generated ones.
    Discrepancies(DiscrepancyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Grades,
    Tables,
    Theorems,
    Subalgebras,
    LieQuaternion,
    LieSubalgebras,
    Groups,
    Rank,
    Quaternions,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Grades => "grades",
            Suite::Tables => "tables",
            Suite::Theorems => "theorems",
            Suite::Subalgebras => "subalgebras",
            Suite::LieQuaternion => "lie-quaternion",
            Suite::LieSubalgebras => "lie-subalgebras",
            Suite::Groups => "groups",
            Suite::Rank => "rank",
            Suite::Quaternions => "quaternions",
            Suite::All => "all",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Random cases per relation or table cell.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance for sampled float checks.
    #[arg(long, default_value = "1e-12")]
    pub tol: f64,
    /// Defaults to exhaustive for n <= 6, random above.
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Series truncation threshold for the exponential.
    #[arg(long, default_value = "1e-14")]
    pub exp_eps: f64,
    #[arg(long, default_value_t = 200)]
    pub exp_max_terms: usize,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableOp {
    Product,
    Comm,
    Anticomm,
}

impl TableOp {
    pub fn op(self) -> OpKind {
        match self {
            TableOp::Product => OpKind::GeometricProduct,
            TableOp::Comm => OpKind::Commutator,
            TableOp::Anticomm => OpKind::Anticommutator,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TableOp::Product => "product",
            TableOp::Comm => "comm",
            TableOp::Anticomm => "anticomm",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub op: TableOp,
    #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Required with --expr; must match the document with --input.
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub expr: Option<String>,
    /// MultivectorDocument JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Relative threshold for a component to count as present.
    #[arg(long, default_value = "1e-12")]
    pub tol: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalOp {
    Gp,
    Comm,
    Anticomm,
    Conj,
    Exp,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, value_enum)]
    pub op: EvalOp,
    #[arg(long, allow_hyphen_values = true)]
    pub lhs: String,
    #[arg(long, allow_hyphen_values = true)]
    pub rhs: Option<String>,
    #[arg(long, default_value = "1e-14")]
    pub eps: f64,
    #[arg(long, default_value_t = 200)]
    pub max_terms: usize,
}

#[derive(Debug, Args)]
pub struct DiscrepancyArgs {
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{flag}: {source}")]
    Parse {
        flag: &'static str,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Core(#[from] cliffq::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(cliffq::Error::ConvergenceFailure { .. }) | CliError::Core(cliffq::Error::NonFinite) => {
                exit::NON_CONVERGENCE
            }
            _ => exit::USAGE,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: exit::USAGE }
            } else {
                Output { stdout: text, stderr: String::new(), code: exit::OK }
            }
        }
    }
}

pub fn execute(command: &Command) -> Output {
    let result = match command {
        Command::Verify(a) => verify(a),
        Command::Table(a) => Ok((table(a.op, a.format), exit::OK)),
        Command::Type(a) => classify(a).map(|s| (s, exit::OK)),
        Command::Eval(a) => eval(a).map(|s| (s, exit::OK)),
        Command::Discrepancies(a) => Ok((discrepancies(a.format), exit::OK)),
    };
    match result {
        Ok((stdout, code)) => Output { stdout, stderr: String::new(), code },
        Err(e) => Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    suite: &'a str,
    config: &'a CheckConfig,
    summary: Summary,
    reports: &'a [CheckReport],
}

fn verify(a: &VerifyArgs) -> Result<(String, i32), CliError> {
    let sig = Signature::new(a.p, a.q)?;
    let mut cfg = CheckConfig::new(sig);
    cfg.seed = a.seed;
    cfg.samples = a.samples;
    cfg.tol = a.tol;
    cfg.exp_eps = a.exp_eps;
    cfg.exp_max_terms = a.exp_max_terms;
    if let Some(s) = a.strategy {
        cfg.strategy = match s {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Random => Strategy::Random,
        };
    }
    let reports = run_suite(&[a.suite.name()], &cfg)?;
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) };
    let code = if summary.fail > 0 { exit::FAILED } else { exit::OK };
    let out = match a.format {
        TextOrJson::Json => {
            let doc = VerifyReport { suite: a.suite.name(), config: &cfg, summary, reports: &reports };
            serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
        }
        TextOrJson::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{r}").unwrap();
            }
            writeln!(
                s,
                "Cl({sig}) {}: {} pass, {} fail, {} skipped",
                a.suite.name(),
                summary.pass,
                summary.fail,
                summary.skipped
            )
            .unwrap();
            s
        }
    };
    Ok((out, code))
}

/// Renders a composition table; cells are digit strings, `""` for the empty type.
pub fn table(op: TableOp, format: TableFormat) -> String {
    let t = emit_table(op.op());
    let order: Vec<String> = QType::ORDER.iter().map(QType::to_string).collect();
    let cells: Vec<Vec<String>> = t.cells.iter().map(|row| row.iter().map(QType::to_string).collect()).collect();
    let mut s = String::new();
    match format {
        TableFormat::Markdown => {
            writeln!(s, "| {} | {} |", op.op().symbol(), order.join(" | ")).unwrap();
            writeln!(s, "|{}", "---|".repeat(16)).unwrap();
            for (label, row) in order.iter().zip(&cells) {
                writeln!(s, "| **{label}** | {} |", row.join(" | ")).unwrap();
            }
        }
        TableFormat::Csv => {
            writeln!(s, "{},{}", op.name(), order.join(",")).unwrap();
            for (label, row) in order.iter().zip(&cells) {
                writeln!(s, "{label},{}", row.join(",")).unwrap();
            }
        }
        TableFormat::Json => {
            #[derive(Serialize)]
            struct TableJson<'a> {
                op: &'a str,
                order: &'a [String],
                cells: &'a [Vec<String>],
            }
            let doc = TableJson { op: op.name(), order: &order, cells: &cells };
            s = serde_json::to_string(&doc).expect("tables serialize") + "\n";
        }
    }
    s
}

fn load_input(a: &TypeArgs) -> Result<Multivector, CliError> {
    if let Some(path) = &a.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let doc = MultivectorDocument::from_json(&text)?;
        for (flag, given, actual) in [("--p", a.p, doc.p), ("--q", a.q, doc.q)] {
            if given.is_some_and(|g| g != actual) {
                return Err(CliError::Usage(format!("{flag} disagrees with the document ({actual})")));
            }
        }
        return Ok(doc.to_multivector()?);
    }
    let (Some(p), Some(q)) = (a.p, a.q) else {
        return Err(CliError::Usage("--expr needs --p and --q".into()));
    };
    let sig = Signature::new(p, q)?;
    let text = a.expr.as_deref().unwrap_or_default();
    compile(text, "--expr", sig, None)
}

fn compile(text: &str, flag: &'static str, sig: Signature, field: Option<FieldTag>) -> Result<Multivector, CliError> {
    parse_expression(text).and_then(|e| e.compile(sig, field)).map_err(|source| CliError::Parse { flag, source })
}

fn classify(a: &TypeArgs) -> Result<String, CliError> {
    if a.tol.is_nan() || a.tol < 0.0 {
        return Err(CliError::Usage(format!("--tol must be >= 0, got {}", a.tol)));
    }
    let u = load_input(a)?;
    let t = detect_qtype(&u, a.tol);
    let pattern = SubspacePattern::detect(&u, a.tol);
    let threshold = a.tol * (1.0 + u.inf_norm());
    let mut s = String::new();
    writeln!(s, "type: {}", if t.is_empty() { "none".to_string() } else { t.to_string() }).unwrap();
    writeln!(s, "pattern: {pattern}").unwrap();
    writeln!(s, "grades:").unwrap();
    for k in 0..=u.sig().n() {
        let part = u.grade_project(k)?;
        if part.inf_norm() > threshold {
            writeln!(s, "  {k}: {part}").unwrap();
        }
    }
    let even = t.contains(0) || t.contains(2);
    let odd = t.contains(1) || t.contains(3);
    let parity = match (even, odd) {
        (true, false) => "even",
        (false, true) => "odd",
        (true, true) => "mixed",
        (false, false) => "zero",
    };
    writeln!(s, "parity: {parity}").unwrap();
    Ok(s)
}

fn eval(a: &EvalArgs) -> Result<String, CliError> {
    let sig = Signature::new(a.p, a.q)?;
    let unary = matches!(a.op, EvalOp::Conj | EvalOp::Exp);
    match (&a.rhs, unary) {
        (Some(_), true) => return Err(CliError::Usage("--rhs is not accepted by unary operations".into())),
        (None, false) => return Err(CliError::Usage("--rhs is required by binary operations".into())),
        _ => {}
    }
    let parse = |text: &str, flag| parse_expression(text).map_err(|source| CliError::Parse { flag, source });
    let lhs = parse(&a.lhs, "--lhs")?;
    let rhs = a.rhs.as_deref().map(|r| parse(r, "--rhs")).transpose()?;
    let field = rhs.as_ref().map_or(lhs.field(), |r| r.field().join(lhs.field()));
    let build = |e: &crate::expr::Expression, flag| {
        e.compile(sig, Some(field)).map_err(|source| CliError::Parse { flag, source })
    };
    let u = build(&lhs, "--lhs")?;
    let result = match a.op {
        EvalOp::Conj => u.clifford_conjugate(),
        EvalOp::Exp => u.exp(a.eps, a.max_terms)?,
        op => {
            let v = build(rhs.as_ref().expect("checked above"), "--rhs")?;
            let kind = match op {
                EvalOp::Gp => OpKind::GeometricProduct,
                EvalOp::Comm => OpKind::Commutator,
                _ => OpKind::Anticommutator,
            };
            kind.apply(&u, &v)?
        }
    };
    Ok(format!("{result}\n{}\n", MultivectorDocument::from_multivector(&result).to_json()))
}

fn discrepancies(format: TextOrJson) -> String {
    let reports: Vec<DiscrepancyReport> = discrepancy_report();
    if format == TextOrJson::Json {
        return serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
    }
    let mut s = String::new();
    for r in &reports {
        writeln!(
            s,
            "{:?} vs {}: {} cells, {} discrepancies",
            r.table,
            r.op.symbol(),
            r.cells_checked,
            r.discrepancies.len()
        )
        .unwrap();
        for d in &r.discrepancies {
            writeln!(
                s,
                "  ({}, {}): reference {:?}, derived {:?}",
                d.row,
                d.col,
                d.reference.to_string(),
                d.derived.to_string()
            )
            .unwrap();
        }
    }
    s
}
