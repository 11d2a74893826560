//! The decomposition pipelines: block-triangular similarity, the four-term
//! decomposition of a trace-zero matrix through a witness B, the polynomial
//! image versions with conjugated argument tuples, the two-term path, and
//! the five-term linear combination for arbitrary matrices.

mod express;
mod four_term;
mod search;
mod triangular;

pub use express::{five_term_express, two_term_decompose, waring_express, ExpressOptions};
pub use four_term::{diff_of_similar, four_term_decompose, DiffOfSimilar};
pub use search::{image_search, Goal, ImageWitness};
pub use triangular::{block_triangular_similarity, Orientation};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::freealg::NcPolynomial;
use crate::linalg::{json, CMatrix, SimilarityCertificate};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    FourTerm,
    TwoTerm,
    FiveTerm,
}

impl Mode {
    pub fn terms(self) -> usize {
        match self {
            Mode::FourTerm => 4,
            Mode::TwoTerm => 2,
            Mode::FiveTerm => 5,
        }
    }

    /// The fixed coefficients of the signed modes.
    pub fn signs(self) -> Option<Vec<Complex64>> {
        let alternating = |k: usize| (0..k).map(|i| Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
        match self {
            Mode::FourTerm => Some(alternating(4)),
            Mode::TwoTerm => Some(alternating(2)),
            Mode::FiveTerm => None,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::FourTerm => "four-term",
            Mode::TwoTerm => "two-term",
            Mode::FiveTerm => "five-term",
        })
    }
}

/// Ties a similarity step to the term it certifies: `from` is witness
/// `witness` and `to` is the image of tuple `term`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermLink {
    pub term: usize,
    pub witness: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertifiedStep {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<TermLink>,
    pub certificate: SimilarityCertificate,
}

/// target ≈ Σ coefficients[i]·f(tuples[i]).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WaringCertificate {
    pub mode: Mode,
    pub polynomial: NcPolynomial,
    pub witnesses: Vec<ImageWitness>,
    #[serde(with = "json::tuples")]
    pub tuples: Vec<Vec<CMatrix>>,
    #[serde(with = "json::complex_list")]
    pub coefficients: Vec<Complex64>,
    #[serde(with = "json::matrix")]
    pub target: CMatrix,
    pub residual: f64,
    pub tolerances: Tolerances,
    pub steps: Vec<CertifiedStep>,
}

impl WaringCertificate {
    pub fn n(&self) -> usize {
        self.target.nrows()
    }

    /// The primary witness B.
    pub fn witness(&self) -> &CMatrix {
        &self.witnesses.last().expect("certificates carry a witness").matrix
    }
}
