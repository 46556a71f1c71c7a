//! The `algper` command line: realize period sets, analyze homology
//! matrices, manipulate zeta factorizations, count the genus census and
//! certify periodic points.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | usage or parse error |
//! | 2 | target set not realizable for the requested kind |
//! | 3 | `--strict` realization whose achieved periods differ from the target |
//! | 4 | matrix not quasi-unipotent (report still written) |
//! | 5 | dimension or genus mismatch, or failed form check |

pub mod json;
pub mod report;
pub mod text;

use std::path::PathBuf;

use algper::census::{census, Correspondence};
use algper::realize::realize;
use algper::zeta::{
    canonicalize, dold_from_zeta, mper_from_factorization, series_expand, zeta_from_dold,
};
use algper::{Error, HomologyModel, ReversingMode, SurfaceKind, TargetSet, ZetaFactorization};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::json::MatrixFileError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNREALIZABLE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_NOT_QUASI_UNIPOTENT: i32 = 4;
pub const EXIT_SHAPE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "algper", version, about = "Algebraic periods of surface maps")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Preserving,
    Reversing,
    Nonorientable,
}

impl From<KindArg> for SurfaceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Preserving => SurfaceKind::OrientablePreserving,
            KindArg::Reversing => SurfaceKind::OrientableReversing,
            KindArg::Nonorientable => SurfaceKind::NonOrientable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Faithful,
    Corrected,
}

impl From<ModeArg> for ReversingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Faithful => ReversingMode::Faithful,
            ModeArg::Corrected => ReversingMode::Corrected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorrespondenceArg {
    Orientable,
    Nonorientable,
}

impl From<CorrespondenceArg> for Correspondence {
    fn from(c: CorrespondenceArg) -> Self {
        match c {
            CorrespondenceArg::Orientable => Correspondence::Orientable,
            CorrespondenceArg::Nonorientable => Correspondence::NonOrientable,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a homology model whose algebraic periods are a given set.
    Realize(RealizeArgs),
    /// Analyze a homology matrix read from a file.
    Analyze(AnalyzeArgs),
    /// Convert between Dold classes and zeta factorizations.
    Zeta(ZetaArgs),
    /// Count partitions of the genus and list the induced Dold classes.
    Census(CensusArgs),
    /// Periodic-point guarantees from a Dold class or a matrix.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Target periods, comma separated.
    #[arg(long, value_parser = parse_target)]
    pub set: TargetSet,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Construction variant for orientation-reversing maps.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Fail when the achieved periods differ from the target.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// JSON file `{"dim": n, "rows": [[...], ...]}`.
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub genus: u64,
    /// Skip the symplectic or antisymplectic form check.
    #[arg(long)]
    pub no_strict: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: MatrixInput,
    /// Length of the printed Lefschetz sequence.
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Dold class as a JSON map, inline or in a file.
    #[arg(long, conflicts_with = "factors", required_unless_present = "factors")]
    pub dold: Option<String>,
    /// Factor list `SIGN,r,m;...`.
    #[arg(long, allow_hyphen_values = true)]
    pub factors: Option<String>,
    /// Emit the canonical exponents `e_k` of `Π (1 − z^k)^{e_k}`.
    #[arg(long)]
    pub canonicalize: bool,
    /// Emit the power series through degree N.
    #[arg(long, value_name = "N")]
    pub series: Option<usize>,
    /// Emit the minimal set of Lefschetz periods.
    #[arg(long)]
    pub mper: bool,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub genus: u64,
    /// List the partitions with their Dold classes.
    #[arg(long)]
    pub list_partitions: bool,
    #[arg(long, value_enum, default_value_t = CorrespondenceArg::Orientable)]
    pub correspondence: CorrespondenceArg,
    /// Maximum number of partitions listed.
    #[arg(long, value_name = "K")]
    pub limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Dold class as a JSON map, inline or in a file.
    #[arg(long, conflicts_with_all = ["matrix", "kind", "genus", "no_strict"], required_unless_present = "matrix")]
    pub dold: Option<String>,
    #[arg(long, requires_all = ["kind", "genus"])]
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long)]
    pub genus: Option<u64>,
    #[arg(long)]
    pub no_strict: bool,
}

fn parse_target(s: &str) -> Result<TargetSet, String> {
    s.parse()
}

/// Result of a command: an optional report for standard output, an
/// optional message for standard error, and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Option<Value>,
    pub message: Option<String>,
    pub code: i32,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self {
            report: Some(report),
            message: None,
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        Self {
            report: None,
            message: Some(message.into()),
            code,
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OddTargetUnrealizable(_) => EXIT_UNREALIZABLE,
        Error::TargetMismatch { .. } => EXIT_MISMATCH,
        Error::NotQuasiUnipotent { .. } => EXIT_NOT_QUASI_UNIPOTENT,
        Error::GenusMismatch { .. }
        | Error::DimensionMismatch(_)
        | Error::OddDimension(_)
        | Error::FormViolation(_)
        | Error::NotAntisymplectic => EXIT_SHAPE,
        _ => EXIT_USAGE,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome::fail(exit_code(&e), e.to_string())
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Realize(a) => cmd_realize(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Zeta(a) => cmd_zeta(a),
        Command::Census(a) => cmd_census(a),
        Command::Certify(a) => cmd_certify(a),
    }
}

/// Serializes a report in the requested format, keys sorted.
pub fn render(report: &Value, format: Format) -> String {
    let report = json::sorted(report.clone());
    match format {
        Format::Json => json::to_pretty(&report),
        Format::Text => text::render(&report),
    }
}

pub fn cmd_realize(a: &RealizeArgs) -> Outcome {
    let kind = SurfaceKind::from(a.kind);
    if a.mode.is_some() && kind != SurfaceKind::OrientableReversing {
        return Outcome::fail(EXIT_USAGE, "--mode applies only to --kind reversing");
    }
    let mode = a.mode.map(ReversingMode::from).unwrap_or_default();
    let model = match realize(&a.set, kind, mode) {
        Ok(m) => m,
        Err(e) => return from_error(e),
    };
    let report = report::realization(&model);
    if a.strict && report["deviation"] == Value::Bool(true) {
        let achieved = report["achieved"].clone();
        return Outcome::fail(
            EXIT_MISMATCH,
            format!("achieved periods {achieved} differ from target {}", a.set),
        );
    }
    Outcome::ok(report)
}

fn load_model(input: &MatrixInput) -> Result<HomologyModel, Outcome> {
    let text = std::fs::read_to_string(&input.matrix).map_err(|e| {
        Outcome::fail(
            EXIT_USAGE,
            format!("cannot read {}: {e}", input.matrix.display()),
        )
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        Outcome::fail(
            EXIT_USAGE,
            format!("{} is not valid JSON: {e}", input.matrix.display()),
        )
    })?;
    let matrix = json::parse_matrix(&value).map_err(|e| match e {
        MatrixFileError::Syntax(e) => {
            Outcome::fail(EXIT_USAGE, format!("{}: {e}", input.matrix.display()))
        }
        MatrixFileError::Shape(msg) => {
            Outcome::fail(EXIT_SHAPE, format!("{}: {msg}", input.matrix.display()))
        }
    })?;
    HomologyModel::with_strictness(input.kind.into(), input.genus, matrix, !input.no_strict)
        .map_err(from_error)
}

pub fn cmd_analyze(a: &AnalyzeArgs) -> Outcome {
    let model = match load_model(&a.input) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let analysis = report::analyze(&model, a.max_iter);
    if analysis.quasi_unipotent {
        Outcome::ok(analysis.report)
    } else {
        Outcome {
            message: model.cyclotomic_orders().err().map(|e| e.to_string()),
            report: Some(analysis.report),
            code: EXIT_NOT_QUASI_UNIPOTENT,
        }
    }
}

pub fn cmd_zeta(a: &ZetaArgs) -> Outcome {
    let (factorization, dold) = match (&a.dold, &a.factors) {
        (Some(src), _) => match json::read_inline_or_file(src).and_then(|v| json::parse_dold(&v)) {
            Ok(d) => (zeta_from_dold(&d), d),
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("{e:#}")),
        },
        (None, Some(s)) => match s.parse::<ZetaFactorization>() {
            Ok(f) => {
                let d = dold_from_zeta(&f);
                (f, d)
            }
            Err(e) => return from_error(e),
        },
        (None, None) => return Outcome::fail(EXIT_USAGE, "one of --dold or --factors is required"),
    };
    let mut out = Map::new();
    out.insert("factors".into(), factorization.to_string().into());
    out.insert("dold".into(), json::dold(&dold));
    if a.canonicalize {
        out.insert(
            "canonical".into(),
            json::exponent_map(&canonicalize(&factorization)),
        );
    }
    if let Some(n) = a.series {
        out.insert(
            "series".into(),
            json::big_list(series_expand(&factorization, n).coeffs()),
        );
    }
    if a.mper {
        out.insert(
            "mper".into(),
            json::set(&mper_from_factorization(&factorization)),
        );
    }
    Outcome::ok(Value::Object(out))
}

pub fn cmd_census(a: &CensusArgs) -> Outcome {
    let sample = a
        .list_partitions
        .then(|| (a.correspondence.into(), a.limit));
    Outcome::ok(report::census(&census(a.genus, sample)))
}

pub fn cmd_certify(a: &CertifyArgs) -> Outcome {
    if let Some(src) = &a.dold {
        return match json::read_inline_or_file(src).and_then(|v| json::parse_dold(&v)) {
            Ok(d) => {
                let mut out = Map::new();
                out.insert("source".into(), "dold".into());
                out.insert("dold".into(), json::dold(&d));
                out.insert("certificates".into(), report::certificates(&d));
                Outcome::ok(Value::Object(out))
            }
            Err(e) => Outcome::fail(EXIT_USAGE, format!("{e:#}")),
        };
    }
    let (Some(matrix), Some(kind), Some(genus)) = (&a.matrix, a.kind, a.genus) else {
        return Outcome::fail(EXIT_USAGE, "--matrix needs --kind and --genus");
    };
    let input = MatrixInput {
        matrix: matrix.clone(),
        kind,
        genus,
        no_strict: a.no_strict,
    };
    let model = match load_model(&input) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let analysis = report::analyze(&model, None);
    let mut out = Map::new();
    out.insert("source".into(), "matrix".into());
    out.insert("kind".into(), model.kind().as_str().into());
    out.insert("genus".into(), model.genus().into());
    out.insert("dold".into(), analysis.report["dold"].clone());
    out.insert(
        "certificates".into(),
        analysis.report["certificates"].clone(),
    );
    let mut outcome = Outcome::ok(Value::Object(out));
    if !analysis.quasi_unipotent {
        outcome.code = EXIT_NOT_QUASI_UNIPOTENT;
        outcome.message = model.cyclotomic_orders().err().map(|e| e.to_string());
    }
    outcome
}

/// Parses `args` and runs the command, returning the text for standard
/// output, the text for standard error and the exit code.
pub fn main_with_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                (rendered, String::new(), code)
            } else {
                (String::new(), rendered, code)
            };
        }
    };
    let outcome = run(&cli.command);
    let stdout = outcome
        .report
        .as_ref()
        .map(|r| render(r, cli.format))
        .unwrap_or_default();
    let stderr = outcome
        .message
        .map(|m| format!("error: {m}\n"))
        .unwrap_or_default();
    (stdout, stderr, outcome.code)
}
