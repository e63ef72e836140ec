//! The `symtrig` command-line tool.
//!
//! Exit status is 0 on success, 1 when an argument or input file is
//! invalid, 2 when a file cannot be read or written, and 3 when `verify`
//! finds a failing check. Every failure also prints one JSON object on
//! standard error: `{"error": kind, "code": status, "message": text}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::continuous::{expected_inner_product, inner_product_f, series_labels, QuadratureRule, DEFAULT_POINTS};
use crate::discrete::{Transform, TransformKind, TransformPlan};
use crate::io::{format_data, parse_data, read_text, sample_csv, write_atomic, CoefficientFile, DEFAULT_MESH};
use crate::kernel::{evaluate, AngularConvention, Family, Label, Point};
use crate::symmetry::{enumerate_labels, DominantLabelSet, LabelSetKind};
use crate::verify::{self, Suite};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "symtrig", version, about = "Symmetric and antisymmetric multivariate sine and cosine functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the value of one function at one point.
    Eval(EvalArgs),
    /// Map a data file to a coefficient file.
    Transform(TransformArgs),
    /// Map a coefficient file back to a data file.
    Inverse(InverseArgs),
    /// Print a Gram matrix and its largest off-diagonal entry.
    Gram(GramArgs),
    /// Run the invariant checks and print a pass/fail table.
    Verify(VerifyArgs),
    /// List the labels and grid points of a transform, or the series labels of a family.
    Enumerate(EnumerateArgs),
    /// Write a CSV of function values over a mesh of the fundamental domain.
    Sample(SampleArgs),
}

/// A comma-separated list of numbers.
#[derive(Debug, Clone)]
struct Reals(Vec<f64>);

fn reals(s: &str) -> Result<Reals, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("'{t}' is not a number")))
        .collect::<Result<_, _>>()
        .map(Reals)
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value = "two-pi")]
    conv: AngularConvention,
    /// Comma-separated label entries.
    #[arg(long, value_parser = reals, allow_hyphen_values = true)]
    label: Reals,
    /// Comma-separated coordinates.
    #[arg(long, value_parser = reals, allow_hyphen_values = true)]
    point: Reals,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long)]
    kind: TransformKind,
    #[arg(long = "N")]
    big_n: i64,
    #[arg(long = "n", default_value_t = 1)]
    dim: usize,
    /// Data file: `k1 .. kn value` per grid point.
    #[arg(long = "in")]
    input: PathBuf,
    /// Coefficient file to write; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InverseArgs {
    /// Coefficient file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Data file to write; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional checks against the file header.
    #[arg(long)]
    kind: Option<TransformKind>,
    #[arg(long = "N")]
    big_n: Option<i64>,
    #[arg(long = "n")]
    dim: Option<usize>,
}

#[derive(Debug, Args)]
struct GramArgs {
    /// Discrete Gram matrix of this transform.
    #[arg(long, conflicts_with = "family")]
    kind: Option<TransformKind>,
    /// Continuous Gram matrix of this family over labels with entries in 1..=3.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long = "N")]
    big_n: Option<i64>,
    #[arg(long = "n", default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    quad_points: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long = "N")]
    big_n: Option<i64>,
    #[arg(long = "n")]
    dim: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    quad_points: usize,
    /// Replaces the default tolerance of every check except the convergence-ratio band.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long, conflicts_with = "family")]
    kind: Option<TransformKind>,
    /// List the series labels of this family with entries up to `--N`.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long = "N")]
    big_n: i64,
    #[arg(long = "n", default_value_t = 1)]
    dim: usize,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value = "two-pi")]
    conv: AngularConvention,
    #[arg(long, value_parser = reals, allow_hyphen_values = true)]
    label: Reals,
    /// Mesh points per axis on [0, 1/2].
    #[arg(long, default_value_t = DEFAULT_MESH)]
    mesh: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Io(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Self::Validation(_) => 1,
            Self::Io(_) => 2,
            Self::Verification(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Validation(_) => "validation",
            Self::Io(_) => "io",
            Self::Verification(_) => "verification",
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Validation(m) | Self::Io(m) | Self::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_io() {
            Self::Io(e.to_string())
        } else {
            Self::Validation(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Outcome {
    match out {
        Some(path) => Ok(write_atomic(path, text)?),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn eval(a: EvalArgs, stdout: &mut dyn Write) -> Outcome {
    let v = evaluate(a.family, a.conv, &Label::new(a.label.0)?, &Point::new(a.point.0)?)?;
    writeln!(stdout, "{v}")?;
    Ok(())
}

fn transform(a: TransformArgs, stdout: &mut dyn Write) -> Outcome {
    let t = Transform::new(a.kind, a.big_n, a.dim)?;
    let data = parse_data(&read_text(&a.input)?, &a.input.display().to_string(), &t)?;
    let coefficients = TransformPlan::new(t).forward(&data)?;
    emit(&a.out, &CoefficientFile { transform: t, coefficients }.to_text(), stdout)
}

fn inverse(a: InverseArgs, stdout: &mut dyn Write) -> Outcome {
    let file = CoefficientFile::read(&a.input)?;
    let t = file.transform;
    let mismatch = a.kind.is_some_and(|k| k != t.kind())
        || a.big_n.is_some_and(|v| v != t.big_n())
        || a.dim.is_some_and(|v| v != t.dim());
    if mismatch {
        return Err(Failure::Validation(format!(
            "flags disagree with the file header (kind {} N {} n {})",
            t.kind(),
            t.big_n(),
            t.dim()
        )));
    }
    let data = TransformPlan::new(t).inverse(&file.coefficients)?;
    emit(&a.out, &format_data(&t, &data), stdout)
}

fn join(t: &[i64]) -> String {
    t.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn gram(a: GramArgs, stdout: &mut dyn Write) -> Outcome {
    let (labels, rows): (Vec<Vec<i64>>, Vec<Vec<f64>>) = match (a.kind, a.family) {
        (Some(kind), None) => {
            let big_n = a.big_n.ok_or_else(|| Failure::Validation("--N is required with --kind".into()))?;
            let plan = TransformPlan::new(Transform::new(kind, big_n, a.dim)?);
            let g = plan.gram_matrix();
            (plan.labels().to_vec(), g.rows().map(<[f64]>::to_vec).collect())
        }
        (None, Some(family)) => {
            let rule = QuadratureRule::new(a.quad_points)?;
            let labels: Vec<Vec<i64>> = series_labels(family, 3, a.dim)
                .into_iter()
                .filter(|m| m.iter().all(|&v| v > 0))
                .collect();
            let mut rows = Vec::new();
            for m in &labels {
                let mut row = Vec::new();
                for m2 in &labels {
                    row.push(inner_product_f(family, &Label::from_ints(m)?, &Label::from_ints(m2)?, &rule)?.value);
                }
                rows.push(row);
            }
            let worst = labels
                .iter()
                .enumerate()
                .flat_map(|(i, m)| labels.iter().enumerate().map(move |(j, m2)| (i, j, m, m2)))
                .map(|(i, j, m, m2)| (rows[i][j] - expected_inner_product(family, m, m2)).abs())
                .fold(0.0, f64::max);
            writeln!(stdout, "# max deviation from the expected diagonal: {worst:e}")?;
            (labels, rows)
        }
        _ => return Err(Failure::Validation("exactly one of --kind and --family is required".into())),
    };
    writeln!(stdout, "# labels: {}", labels.iter().map(|m| format!("({})", join(m))).collect::<Vec<_>>().join(" "))?;
    let mut off: f64 = 0.0;
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.12}")).collect();
        writeln!(stdout, "{}", cells.join(" "))?;
        for (j, v) in row.iter().enumerate() {
            if i != j {
                off = off.max(v.abs());
            }
        }
    }
    writeln!(stdout, "max_off_diagonal {off:e}")?;
    Ok(())
}

fn run_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Outcome {
    if a.tol.is_some_and(|t| t.is_nan() || t < 0.0) {
        return Err(Failure::Validation("--tol must be a non-negative number".into()));
    }
    let config = verify::Config { big_n: a.big_n, dim: a.dim, quad_points: a.quad_points, tol: a.tol, ..Default::default() };
    let checks = verify::run(a.suite, &config)?;
    writeln!(stdout, "{:<6} {:>12} {:>10}  check", "status", "max_defect", "tol")?;
    for c in &checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        writeln!(stdout, "{status:<6} {:>12.3e} {:>10.1e}  {}", c.max_defect, c.tol, c.name)?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(stdout, "{} checks, {failed} failed", checks.len())?;
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs, stdout: &mut dyn Write) -> Outcome {
    match (a.kind, a.family) {
        (Some(kind), None) => {
            let t = Transform::new(kind, a.big_n, a.dim)?;
            let labels = t.labels();
            writeln!(stdout, "# labels ({})", labels.len())?;
            for r in &labels {
                writeln!(stdout, "{}", join(r))?;
            }
            let grid = t.grid();
            writeln!(stdout, "# grid points k/{} ({})", a.big_n, grid.len())?;
            for k in &grid {
                writeln!(stdout, "{}", join(k))?;
            }
        }
        (None, Some(family)) => {
            let kind = if family.is_alternating() { LabelSetKind::StrictPositive } else { LabelSetKind::WeakNonneg };
            let labels = enumerate_labels(&DominantLabelSet::new(kind, a.big_n, a.dim));
            let nonzero = series_labels(family, a.big_n, a.dim);
            writeln!(stdout, "# {} labels with entries <= {} ({})", family, a.big_n, labels.len())?;
            for m in &labels {
                let note = if nonzero.contains(m) { "" } else { "  # vanishes identically" };
                writeln!(stdout, "{}{note}", join(m))?;
            }
        }
        _ => return Err(Failure::Validation("exactly one of --kind and --family is required".into())),
    }
    Ok(())
}

fn sample(a: SampleArgs, stdout: &mut dyn Write) -> Outcome {
    let csv = sample_csv(a.family, a.conv, &Label::new(a.label.0)?, a.mesh)?;
    emit(&a.out, &csv, stdout)
}

fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var("SYMTRIG_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| Failure::Validation(format!("SYMTRIG_THREADS must be a positive integer, got '{raw}'")))?;
    // A pool may already exist when called twice in one process; the first setting wins.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Outcome {
    configure_threads()?;
    match command {
        Command::Eval(a) => eval(a, stdout),
        Command::Transform(a) => transform(a, stdout),
        Command::Inverse(a) => inverse(a, stdout),
        Command::Gram(a) => gram(a, stdout),
        Command::Verify(a) => run_verify(a, stdout),
        Command::Enumerate(a) => enumerate(a, stdout),
        Command::Sample(a) => sample(a, stdout),
    }
}

fn report(failure: &Failure, stderr: &mut dyn Write) -> i32 {
    let line = serde_json::json!({
        "error": failure.kind(),
        "code": failure.code(),
        "message": failure.message(),
    });
    let _ = writeln!(stderr, "{line}");
    failure.code()
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let _ = write!(stderr, "{}", e.render());
            return report(&Failure::Validation(e.kind().to_string()), stderr);
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(f) => report(&f, stderr),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
