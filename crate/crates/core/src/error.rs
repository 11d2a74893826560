use num_complex::Complex64;
use thiserror::Error;

use crate::freealg::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable index 0 at byte {position} (variables are numbered from X1)")]
    ZeroVariable { position: usize },

    #[error("malformed complex literal at byte {position}")]
    MalformedComplex { position: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polynomial uses {needed} variables but only {given} arguments were supplied")]
    TooFewArguments { needed: usize, given: usize },

    #[error("Schur iteration did not converge")]
    NonConvergence,

    #[error("matrix is numerically singular")]
    Singular,

    #[error("spectra overlap: minimal eigenvalue gap {gap:e} is not above {bound:e}")]
    SpectraOverlap { gap: f64, bound: f64 },

    #[error("Sylvester solve is ill-conditioned: relative residual {residual:e} exceeds {bound:e}")]
    IllConditioned { residual: f64, bound: f64 },

    #[error("eigenvalue clusters {gap:e} apart are closer than the gap tolerance {bound:e}")]
    ClusterGapTooSmall { gap: f64, bound: f64 },

    #[error("{what}: {value:e} exceeds bound {bound:e}")]
    CertificateFailure { what: String, value: f64, bound: f64 },

    #[error("eigenvalue {value} has multiplicity {multiplicity} > n/2 for n = {n}")]
    MultiplicityTooLarge { value: Complex64, multiplicity: usize, n: usize },

    #[error("matrix trace {trace} is not zero")]
    NonzeroTrace { trace: Complex64 },

    #[error("matrix is not hollow: largest diagonal entry {max_diag:e}")]
    NotHollow { max_diag: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid block pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid block structure: {0}")]
    InvalidStructure(String),

    #[error("residual {residual:e} exceeds bound {bound:e}")]
    ResidualTooLarge { residual: f64, bound: f64 },

    #[error("polynomial is not usable here: classified as {0}")]
    NotGeneric(Verdict),

    #[error("no image point satisfying {goal} within {budget} samples (classifier verdict: {verdict})")]
    BudgetExhausted { goal: String, budget: usize, verdict: Verdict },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
