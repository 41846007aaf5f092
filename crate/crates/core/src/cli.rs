//! `kurtbound` command-line interface.
//!
//! Exit codes: 0 success or PASS, 1 usage or parse error, 2 validation FAIL,
//! 3 infeasible or out-of-domain input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::appendix::comparison_table;
use crate::chebyshev::{
    bhattacharyya_at_extreme_point, even_moment_endpoint, zelen_at_extreme_point, BoundEvaluation,
};
use crate::distributions::{TailFactorQuery, TailModel, BLR_KURTOSIS_COLUMNS};
use crate::error::Error;
use crate::extreme_point::solve_extreme_point;
use crate::output::{Cell, Format, OutputDocument, Precision};
use crate::series::ReturnSeries;
use crate::validator::{
    empirical_validate, history_years, validate_blr, validate_model, ModelVerdict, SafeHistory,
    ThresholdSource, DEFAULT_DAYS_PER_YEAR,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

const TABLE_N: [f64; 7] = [250.0, 500.0, 1e3, 1e4, 1e5, 1e6, 833_208.0];
const BOUNDS_N: [f64; 6] = [250.0, 500.0, 1e3, 1e4, 1e5, 1e6];
const BHATTACHARYYA_N: [f64; 5] = [1e4, 1e5, 1e6, 1e7, 1e8];
const HORIZONS: [f64; 6] = [250.0, 500.0, 1e3, 1e4, 1e5, 1e6];
const APPENDIX_N: [usize; 7] = [500, 1000, 2000, 3000, 4000, 5000, 10_000];

#[derive(Debug, Parser)]
#[command(
    name = "kurtbound",
    version,
    about = "Kurtosis-constrained extreme-deviation bounds and stress-shock validation"
)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Write the document to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Decimal places for numeric cells, or `full` for round-trip precision.
    #[arg(long, global = true, default_value = "3")]
    pub precision: Precision,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Required tail factors a(N, κ) over a grid of history lengths and kurtoses.
    ShockTable(GridArgs),
    /// Kurtosis-aware Chebyshev-type bounds evaluated at the extreme point.
    Bounds(BoundsArgs),
    /// Normal or Student-t tail factors for 1-in-N day shocks.
    TailFactor(TailFactorArgs),
    /// Validate a tail factor (or a published Brace-Lauer-Rado factor) against a history.
    Validate(ValidateArgs),
    /// Validate a tail factor against an empirical return series read from CSV.
    Empirical(EmpiricalArgs),
    /// Outlier statistic for alternative base shapes.
    Appendix(AppendixArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// History lengths N (comma separated).
    #[arg(long = "n", value_delimiter = ',', num_args = 1..)]
    pub n: Option<Vec<f64>>,

    /// Kurtosis values (comma separated, non-excess).
    #[arg(long = "kurtosis", value_delimiter = ',', num_args = 1..)]
    pub kurtosis: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    EvenMoment,
    Zelen,
    Bhattacharyya,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Threshold,
    Probability,
    OneInN,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,

    /// Reported quantity; defaults to threshold (even-moment), one-in-n
    /// (zelen) or probability (bhattacharyya).
    #[arg(long, value_enum)]
    pub quantity: Option<QuantityArg>,

    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Normal,
    StudentT,
}

#[derive(Debug, Args)]
pub struct TailFactorArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,

    /// Degrees of freedom (comma separated); required for student-t.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub dof: Option<Vec<u32>>,

    /// Event horizons N in days (comma separated); the quantile is at 1 - 1/N.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub horizon: Option<Vec<f64>>,

    /// Also tabulate a(N, κ) for these kurtoses.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub compare_kurtosis: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Tail factor k (shock = k·σ).
    #[arg(long, required_unless_present = "blr", conflicts_with = "blr")]
    pub tail_factor: Option<f64>,

    /// Use the published Brace-Lauer-Rado tail factor instead.
    #[arg(long, requires = "g_inv")]
    pub blr: bool,

    /// Brace-Lauer-Rado mean-reversion horizon label (1m .. 6m).
    #[arg(long)]
    pub g_inv: Option<String>,

    /// History length in observations.
    #[arg(long)]
    pub history: u64,

    /// Assumed kurtosis (non-excess).
    #[arg(long)]
    pub kurtosis: f64,

    #[arg(long, default_value_t = DEFAULT_DAYS_PER_YEAR)]
    pub days_per_year: f64,
}

#[derive(Debug, Args)]
pub struct EmpiricalArgs {
    /// CSV file: one `value` or `date,value` per line, optional header.
    #[arg(long)]
    pub file: PathBuf,

    #[arg(long)]
    pub tail_factor: f64,

    #[arg(long, default_value_t = DEFAULT_DAYS_PER_YEAR)]
    pub days_per_year: f64,
}

#[derive(Debug, Args)]
pub struct AppendixArgs {
    /// Base point counts N - 1 (comma separated).
    #[arg(long = "n", value_delimiter = ',', num_args = 1..)]
    pub n: Option<Vec<usize>>,

    #[arg(long, default_value_t = 16.0)]
    pub kurtosis: f64,
}

/// A rendered command result and its exit code.
#[derive(Debug)]
pub struct Outcome {
    pub document: OutputDocument,
    pub exit_code: i32,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(document: OutputDocument) -> Self {
        Self {
            document,
            exit_code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_INFEASIBLE,
    }
}

fn kurtosis_header(k: f64) -> String {
    format!("kurtosis = {k}")
}

fn integer_or_number(n: f64) -> Cell {
    if n.fract() == 0.0 && n.abs() < 9e15 {
        Cell::Integer(n as i64)
    } else {
        Cell::Number(n)
    }
}

fn safe_history_cell(h: SafeHistory) -> Cell {
    match h {
        SafeHistory::Bounded { n } => Cell::Integer(n as i64),
        SafeHistory::Unbounded { ceiling } => Cell::text(format!("unbounded (> {ceiling})")),
        SafeHistory::BelowFloor { floor } => {
            Cell::text(format!("none (a > k already at N = {floor})"))
        }
    }
}

fn non_empty<T: Clone>(v: Option<Vec<T>>, default: &[T], what: &str) -> Result<Vec<T>, String> {
    match v {
        None => Ok(default.to_vec()),
        Some(v) if v.is_empty() => Err(format!("{what} list is empty")),
        Some(v) => Ok(v),
    }
}

pub fn shock_table(n_list: &[f64], kappas: &[f64]) -> OutputDocument {
    let mut headers = vec!["N".to_string(), "sqrt(N-1)".to_string()];
    headers.extend(kappas.iter().map(|&k| kurtosis_header(k)));
    let mut doc = OutputDocument::new("a = (max - mean)/stdev for given N and kurtosis", headers)
        .with_source("a-grid");
    for &n in n_list {
        let mut row = vec![
            integer_or_number(n),
            Cell::Number((n - 1.0).max(0.0).sqrt()),
        ];
        for &k in kappas {
            row.push(match solve_extreme_point(n, k) {
                Ok(s) => Cell::Number(s.a),
                Err(e) => Cell::Invalid(e.to_string()),
            });
        }
        doc.push_row(row).expect("row width");
    }
    doc
}

fn bound_cell(eval: Result<BoundEvaluation, Error>, quantity: QuantityArg) -> Cell {
    match eval {
        Ok(b) => match quantity {
            QuantityArg::Threshold => Cell::Number(b.threshold_t),
            QuantityArg::Probability => b
                .probability
                .map_or(Cell::Invalid("n/a".into()), Cell::Number),
            QuantityArg::OneInN => b.one_in_n.map_or(Cell::Invalid("n/a".into()), Cell::Number),
        },
        Err(e) => Cell::Invalid(e.to_string()),
    }
}

/// Returns the document and whether any (N, κ) pair was infeasible.
pub fn bounds_table(
    method: MethodArg,
    quantity: Option<QuantityArg>,
    n_list: &[f64],
    kappas: &[f64],
) -> (OutputDocument, bool) {
    let (title, source, default_quantity) = match method {
        MethodArg::EvenMoment => (
            "Fourth-moment Chebyshev endpoint (kappa N)^(1/4)",
            "even-moment-grid",
            QuantityArg::Threshold,
        ),
        MethodArg::Zelen => (
            "Zelen's bound at t = a(N, kappa)",
            "zelen-grid",
            QuantityArg::OneInN,
        ),
        MethodArg::Bhattacharyya => (
            "Bhattacharyya's one-sided bound at t = a(N, kappa)",
            "bhattacharyya-grid",
            QuantityArg::Probability,
        ),
    };
    let quantity = quantity.unwrap_or(default_quantity);
    let mut headers = vec!["N".to_string()];
    headers.extend(kappas.iter().map(|&k| kurtosis_header(k)));
    let mut doc = OutputDocument::new(title, headers).with_source(source);
    doc.note(format!("quantity: {quantity:?}"));

    let mut infeasible = false;
    for &n in n_list {
        let mut row = vec![integer_or_number(n)];
        for &k in kappas {
            let eval = match method {
                MethodArg::EvenMoment => even_moment_endpoint(n, k),
                MethodArg::Zelen => zelen_at_extreme_point(n, k),
                MethodArg::Bhattacharyya => bhattacharyya_at_extreme_point(n, k),
            };
            if matches!(eval, Err(Error::InfeasibleKurtosis { .. })) {
                infeasible = true;
            }
            row.push(bound_cell(eval, quantity));
        }
        doc.push_row(row).expect("row width");
    }
    (doc, infeasible)
}

pub fn tail_factor_table(
    model: ModelArg,
    dofs: &[u32],
    horizons: &[f64],
    compare: &[f64],
) -> OutputDocument {
    let models: Vec<TailModel> = match model {
        ModelArg::Normal => vec![TailModel::Normal],
        ModelArg::StudentT => dofs
            .iter()
            .map(|&dof| TailModel::StudentT { dof })
            .collect(),
    };
    let mut headers = vec!["N".to_string()];
    headers.extend(models.iter().map(|m| match m {
        TailModel::Normal => "normal".to_string(),
        TailModel::StudentT { dof } => format!("t(dof = {dof})"),
    }));
    headers.extend(compare.iter().map(|&k| format!("a(N, kappa = {k})")));
    let mut doc = OutputDocument::new("Tail factors at probability 1 - 1/N", headers)
        .with_source("tail-factor-grid");
    doc.note("Student-t factors are raw quantiles, not rescaled to unit variance");

    for &n in horizons {
        let mut row = vec![integer_or_number(n)];
        for &m in &models {
            row.push(
                match TailFactorQuery::new(n, m).and_then(|q| q.tail_factor()) {
                    Ok(v) => Cell::Number(v),
                    Err(e) => Cell::Invalid(e.to_string()),
                },
            );
        }
        for &k in compare {
            row.push(match solve_extreme_point(n, k) {
                Ok(s) => Cell::Number(s.a),
                Err(e) => Cell::Invalid(e.to_string()),
            });
        }
        doc.push_row(row).expect("row width");
    }
    doc
}

fn verdict_document(title: &str, v: &ModelVerdict, days_per_year: f64) -> OutputDocument {
    let mut doc = OutputDocument::new(title, ["field", "value"]);
    let years = |n: u64| Cell::Number(history_years(n, days_per_year));
    let mut rows: Vec<(&str, Cell)> = vec![
        ("tail_factor", v.tail_factor.into()),
        ("history_n", Cell::Integer(v.history_n as i64)),
        ("history_years", years(v.history_n)),
        ("kurtosis", v.kappa.into()),
        ("required_a", v.required_a.into()),
        ("margin", v.margin.into()),
        ("verdict", if v.pass { "PASS" } else { "FAIL" }.into()),
        ("max_safe_history", safe_history_cell(v.max_safe_history)),
    ];
    if let SafeHistory::Bounded { n } = v.max_safe_history {
        rows.push(("max_safe_history_years", years(n)));
    }
    for (k, c) in rows {
        doc.push_row(vec![k.into(), c]).expect("row width");
    }
    doc
}

fn run_validate(args: &ValidateArgs) -> Result<Outcome, Error> {
    let (verdict, title) = if args.blr {
        let label = args.g_inv.as_deref().unwrap_or_default();
        (
            validate_blr(label, args.kurtosis, args.history)?,
            format!("Brace-Lauer-Rado tail factor (g_inv = {label}) validation"),
        )
    } else {
        let k = args.tail_factor.unwrap_or_default();
        (
            validate_model(k, args.history, args.kurtosis)?,
            "Tail factor validation".to_string(),
        )
    };
    let mut doc = verdict_document(&title, &verdict, args.days_per_year);
    if args.blr {
        doc = doc.with_source("blr-tail-factors");
    }
    Ok(Outcome {
        document: doc,
        exit_code: if verdict.pass { EXIT_OK } else { EXIT_FAIL },
        warnings: Vec::new(),
    })
}

fn run_empirical(args: &EmpiricalArgs) -> Result<Outcome, Error> {
    let series = ReturnSeries::from_path(&args.file)?;
    let v = empirical_validate(&series, args.tail_factor)?;
    let s = &v.statistics;
    let mut doc = OutputDocument::new("Empirical tail factor validation", ["field", "value"]);
    let source = match v.threshold_source {
        ThresholdSource::ClosedForm => "closed_form",
        ThresholdSource::SamuelsonFallback => "samuelson_fallback (kurtosis infeasible)",
    };
    let mut rows: Vec<(&str, Cell)> = vec![
        ("n", Cell::Integer(s.n as i64)),
        (
            "history_years",
            history_years(s.n as u64, args.days_per_year).into(),
        ),
        ("mean", s.mean.into()),
        ("sigma", s.sigma.into()),
        ("skewness", s.skewness.into()),
        ("kurtosis", s.kurtosis.into()),
        (
            "max_abs_deviation_in_sigmas",
            s.max_abs_deviation_in_sigmas.into(),
        ),
        ("tail_factor", v.tail_factor.into()),
        ("required_a", v.required_a.into()),
        ("threshold_source", source.into()),
        ("margin", v.margin.into()),
        ("historical_breach", v.historical_breach.to_string().into()),
        (
            "theoretical_exposure",
            v.theoretical_exposure.to_string().into(),
        ),
        ("verdict", if v.pass { "PASS" } else { "FAIL" }.into()),
    ];
    if let Some(h) = v.max_safe_history {
        rows.push(("max_safe_history", safe_history_cell(h)));
    }
    for (k, c) in rows {
        doc.push_row(vec![k.into(), c]).expect("row width");
    }
    doc.note("population moments; kurtosis is non-excess");
    if let Some(dates) = &s.dates {
        if let (Some(first), Some(last)) = (dates.first(), dates.last()) {
            doc.note(format!("dates {first} .. {last}"));
        }
    }
    Ok(Outcome {
        document: doc,
        exit_code: if v.pass { EXIT_OK } else { EXIT_FAIL },
        warnings: Vec::new(),
    })
}

fn run_appendix(args: &AppendixArgs) -> Result<Outcome, Error> {
    let counts = args.n.clone().unwrap_or_else(|| APPENDIX_N.to_vec());
    let rows = comparison_table(&counts, args.kurtosis)?;
    let mut doc = OutputDocument::new(
        format!(
            "Outlier statistic by base shape at kurtosis {}",
            args.kurtosis
        ),
        [
            "N-1",
            "sqrt(N-1)",
            "bimodal",
            "trimodal",
            "two_thirds",
            "uniform",
        ],
    )
    .with_source("base-shape-comparison");
    for r in rows {
        doc.push_row(vec![
            Cell::Integer(r.base_count as i64),
            r.samuelson.into(),
            r.bimodal.into(),
            r.trimodal.into(),
            r.two_thirds.into(),
            r.uniform.into(),
        ])
        .expect("row width");
    }
    Ok(Outcome::ok(doc))
}

/// Execute a parsed command. `Err(message)` is a usage error.
pub fn execute(command: &Command) -> Result<Result<Outcome, Error>, String> {
    Ok(match command {
        Command::ShockTable(g) => {
            let n = non_empty(g.n.clone(), &TABLE_N, "--n")?;
            let k = non_empty(g.kurtosis.clone(), &BLR_KURTOSIS_COLUMNS, "--kurtosis")?;
            let doc = shock_table(&n, &k);
            let exit_code = if doc.has_invalid() {
                EXIT_INFEASIBLE
            } else {
                EXIT_OK
            };
            Ok(Outcome {
                document: doc,
                exit_code,
                warnings: Vec::new(),
            })
        }
        Command::Bounds(b) => {
            let default_n: &[f64] = match b.method {
                MethodArg::Bhattacharyya => &BHATTACHARYYA_N,
                _ => &BOUNDS_N,
            };
            let n = non_empty(b.grid.n.clone(), default_n, "--n")?;
            let k = non_empty(b.grid.kurtosis.clone(), &BLR_KURTOSIS_COLUMNS, "--kurtosis")?;
            let (doc, infeasible) = bounds_table(b.method, b.quantity, &n, &k);
            Ok(Outcome {
                document: doc,
                exit_code: if infeasible { EXIT_INFEASIBLE } else { EXIT_OK },
                warnings: Vec::new(),
            })
        }
        Command::TailFactor(t) => {
            let dofs = match (t.model, &t.dof) {
                (ModelArg::StudentT, None) => {
                    return Err("--dof is required for --model student-t".into())
                }
                (ModelArg::StudentT, Some(d)) if d.is_empty() => {
                    return Err("--dof list is empty".into())
                }
                (_, d) => d.clone().unwrap_or_default(),
            };
            let horizons = non_empty(t.horizon.clone(), &HORIZONS, "--horizon")?;
            let compare = t.compare_kurtosis.clone().unwrap_or_default();
            let mut warnings = Vec::new();
            if t.model == ModelArg::StudentT {
                for &d in dofs.iter().filter(|&&d| d <= 2) {
                    warnings.push(format!(
                        "Student-t with {d} degrees of freedom has infinite variance; tail factor in sigma units is not meaningful"
                    ));
                }
            }
            let doc = tail_factor_table(t.model, &dofs, &horizons, &compare);
            let exit_code = if doc.has_invalid() {
                EXIT_INFEASIBLE
            } else {
                EXIT_OK
            };
            Ok(Outcome {
                document: doc,
                exit_code,
                warnings,
            })
        }
        Command::Validate(v) => run_validate(v),
        Command::Empirical(e) => run_empirical(e),
        Command::Appendix(a) => {
            if matches!(&a.n, Some(v) if v.is_empty()) {
                return Err("--n list is empty".into());
            }
            run_appendix(a)
        }
    })
}

/// Parse `args`, run the command, write the document. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };

    let outcome = match execute(&cli.command) {
        Err(usage) => {
            let _ = writeln!(stderr, "error: {usage}");
            return EXIT_USAGE;
        }
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code_for(&e);
        }
        Ok(Ok(outcome)) => outcome,
    };
    for w in &outcome.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }

    let text = match outcome.document.render(cli.format.into(), cli.precision) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => {
            std::fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    outcome.exit_code
}
