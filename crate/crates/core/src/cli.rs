//! The `waring` command line: `decompose`, `verify`, `classify` and
//! `search-image`.
//!
//! Exit codes: 0 success, 1 verification or other failure, 2 unparsable
//! input, 3 polynomial is an identity or central, 4 witness search budget
//! exhausted, 5 residual or certificate bound violated during construction.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certificate::{self, to_json_string};
use crate::error::{Error, Result};
use crate::freealg::{classify_with, parse, ClassifyOptions};
use crate::linalg::{frobenius, json, project_traceless, trace, CMatrix};
use crate::tolerances::Tolerances;
use crate::waring::{
    five_term_express, image_search, two_term_decompose, waring_express, ExpressOptions, Goal,
};

#[derive(Debug, Parser)]
#[command(name = "waring", version, about = "Write trace-zero matrices through images of noncommutative polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a matrix and write a certificate.
    Decompose {
        /// Polynomial, e.g. "[X1,X2]" or "X1*X2*X3 - X3*X2*X1".
        poly: String,
        /// Matrix file in the {"n", "entries"} JSON format.
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Independently check a certificate file.
    Verify {
        certificate: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Classify a polynomial on n×n matrices.
    Classify {
        poly: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Search the image of a polynomial for a witness matrix.
    SearchImage {
        poly: String,
        #[arg(long)]
        n: usize,
        /// multiplicity-half, distinct-eigs or nonzero-trace.
        #[arg(long)]
        goal: Goal,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Four,
    Two,
    Five,
    /// Two-term when n is prime or f is multilinear, else four-term.
    Auto,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples per witness search.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    /// Output file (standard output if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Args, Default)]
pub struct TolArgs {
    #[arg(long)]
    pub tol_gap: Option<f64>,
    #[arg(long)]
    pub tol_hollow: Option<f64>,
    #[arg(long)]
    pub tol_split: Option<f64>,
    #[arg(long)]
    pub tol_cert: Option<f64>,
    #[arg(long)]
    pub tol_end: Option<f64>,
    #[arg(long)]
    pub tol_rank: Option<f64>,
    #[arg(long)]
    pub tol_solve: Option<f64>,
    #[arg(long)]
    pub tol_cluster: Option<f64>,
    #[arg(long)]
    pub tol_trace: Option<f64>,
    #[arg(long)]
    pub tol_classify: Option<f64>,
}

impl TolArgs {
    fn overrides(&self) -> [(&'static str, Option<f64>); 10] {
        [
            ("gap", self.tol_gap),
            ("hollow", self.tol_hollow),
            ("split", self.tol_split),
            ("cert", self.tol_cert),
            ("end", self.tol_end),
            ("rank", self.tol_rank),
            ("solve", self.tol_solve),
            ("cluster", self.tol_cluster),
            ("trace", self.tol_trace),
            ("classify", self.tol_classify),
        ]
    }

    /// `base` with every given flag applied.
    pub fn apply(&self, base: &Tolerances) -> Result<Tolerances> {
        let mut tol = *base;
        for (name, value) in self.overrides() {
            if let Some(v) = value {
                tol.set(name, v)?;
            }
        }
        Ok(tol)
    }
}

/// Process exit code for a failure.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Syntax { .. } | Error::ZeroVariable { .. } | Error::MalformedComplex { .. } | Error::Json(_) => 2,
        Error::NotGeneric(_) => 3,
        Error::BudgetExhausted { .. } => 4,
        Error::ResidualTooLarge { .. }
        | Error::CertificateFailure { .. }
        | Error::IllConditioned { .. }
        | Error::NotHollow { .. }
        | Error::ClusterGapTooSmall { .. }
        | Error::SpectraOverlap { .. } => 5,
        _ => 1,
    }
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn decompose(
    poly: &str,
    matrix: &Path,
    mode: ModeArg,
    run: &RunArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let f = parse(poly)?;
    let tol = run.tol.apply(&Tolerances::default())?;
    let text = read_input(matrix)?;
    let mut a: CMatrix = json::parse_matrix(&text).map_err(|e| match e {
        Error::Json(_) => e,
        other => Error::Syntax { position: 0, message: other.to_string() },
    })?;
    let n = a.nrows();
    let opts = ExpressOptions { budget: run.budget, seed: run.seed };
    let prime = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    let mode = match mode {
        ModeArg::Auto => {
            let tr = trace(&a);
            if tr.norm() > tol.trace_tol * frobenius(&a).max(1.0) {
                writeln!(stderr, "warning: target trace {tr} is not zero; decomposing its trace-zero projection")?;
                a = project_traceless(&a);
            }
            if prime || f.is_multilinear() {
                ModeArg::Two
            } else {
                ModeArg::Four
            }
        }
        other => other,
    };
    let cert = match mode {
        ModeArg::Two => two_term_decompose(&f, &a, &opts, &tol)?,
        ModeArg::Five => five_term_express(&f, &a, &opts, &tol)?,
        _ => waring_express(&f, &a, &opts, &tol)?,
    };
    emit(&certificate::to_json(&cert)?, run.out.as_deref(), stdout)?;
    writeln!(
        stderr,
        "{} certificate for n = {n}: residual {:.3e} (bound {:.3e})",
        cert.mode,
        cert.residual,
        tol.end_tol * frobenius(&a).max(1.0)
    )?;
    Ok(0)
}

fn verify(path: &Path, tol: &TolArgs, stdout: &mut dyn Write) -> Result<i32> {
    let cert = certificate::from_json(&read_input(path)?)?;
    let tol = tol.apply(&cert.tolerances.stricter(&Tolerances::default()))?;
    match certificate::verify_with(&cert, &tol) {
        Ok(report) => {
            writeln!(
                stdout,
                "ok: {} certificate, n = {}, {} steps, residual {:.3e} <= {:.3e}",
                cert.mode, report.n, report.steps, report.residual, report.bound
            )?;
            Ok(0)
        }
        Err(e) => {
            writeln!(stdout, "FAILED: {e}")?;
            Ok(1)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SearchOutput<'a> {
    polynomial: String,
    goal: String,
    sample: u64,
    #[serde(with = "json::matrix")]
    matrix: &'a CMatrix,
    #[serde(with = "json::matrices")]
    args: &'a [CMatrix],
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Decompose { poly, matrix, mode, run } => decompose(&poly, &matrix, mode, &run, stdout, stderr),
        Command::Verify { certificate, tol } => verify(&certificate, &tol, stdout),
        Command::Classify { poly, n, samples, k_max, seed, tol } => {
            let f = parse(&poly)?;
            let tol = tol.apply(&Tolerances::default())?;
            let opts = ClassifyOptions { samples, tol: tol.classify_tol, k_max, seed };
            writeln!(stdout, "{}", classify_with(&f, n, &opts).verdict)?;
            Ok(0)
        }
        Command::SearchImage { poly, n, goal, run } => {
            let f = parse(&poly)?;
            let tol = run.tol.apply(&Tolerances::default())?;
            let w = image_search(&f, n, goal, run.budget, run.seed, &tol)?;
            let out = SearchOutput {
                polynomial: f.to_string(),
                goal: goal.to_string(),
                sample: w.sample,
                matrix: &w.matrix,
                args: &w.args,
            };
            emit(&to_json_string(&out)?, run.out.as_deref(), stdout)?;
            Ok(0)
        }
    }
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
