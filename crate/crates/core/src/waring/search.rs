use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{cluster_eigenvalues, partition_spectrum};
use crate::error::{Error, Result};
use crate::freealg::{classify_with, ClassifyOptions, NcPolynomial};
use crate::linalg::{eigenvalues, frobenius, json, trace, CMatrix};
use crate::sampling::random_tuple;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Goal {
    /// No eigenvalue of multiplicity above n/2, with a usable spectral partition.
    MultiplicityHalf,
    /// Pairwise distinct eigenvalues.
    DistinctEigs,
    NonzeroTrace,
}

impl std::fmt::Display for Goal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Goal::MultiplicityHalf => "multiplicity at most n/2",
            Goal::DistinctEigs => "distinct eigenvalues",
            Goal::NonzeroTrace => "nonzero trace",
        })
    }
}

impl std::str::FromStr for Goal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multiplicity-half" => Ok(Goal::MultiplicityHalf),
            "distinct-eigs" => Ok(Goal::DistinctEigs),
            "nonzero-trace" => Ok(Goal::NonzeroTrace),
            _ => Err(Error::InvalidInput(format!(
                "unknown goal {s:?} (expected multiplicity-half, distinct-eigs or nonzero-trace)"
            ))),
        }
    }
}

/// matrix = f(args), found at sample `sample`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ImageWitness {
    #[serde(with = "json::matrix")]
    pub matrix: CMatrix,
    #[serde(with = "json::matrices")]
    pub args: Vec<CMatrix>,
    pub sample: u64,
}

fn meets(goal: Goal, image: &CMatrix, tol: &Tolerances) -> bool {
    let n = image.nrows();
    match goal {
        Goal::MultiplicityHalf => {
            let Ok(eigs) = eigenvalues(image) else { return false };
            let clusters = cluster_eigenvalues(&eigs, tol.cluster_tol);
            clusters.iter().all(|c| 2 * c.multiplicity <= n) && partition_spectrum(image, tol).is_ok()
        }
        Goal::DistinctEigs => {
            let Ok(eigs) = eigenvalues(image) else { return false };
            let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let bound = tol.gap_tol * scale.max(1.0);
            eigs.iter().enumerate().all(|(i, a)| eigs[i + 1..].iter().all(|b| (a - b).norm() > bound))
        }
        Goal::NonzeroTrace => trace(image).norm() > tol.trace_tol * frobenius(image).max(1.0),
    }
}

/// The lowest-indexed seeded sample whose image satisfies `goal`. Samples
/// are drawn in parallel; the result does not depend on scheduling.
pub fn image_search(
    f: &NcPolynomial,
    n: usize,
    goal: Goal,
    budget: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<ImageWitness> {
    if budget == 0 {
        return Err(Error::InvalidParameter("budget must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("matrix size must be positive".into()));
    }
    let m = f.num_vars().max(1);
    let found = (0..budget as u64).into_par_iter().find_map_first(|sample| {
        let args = random_tuple(seed, sample, m, n);
        let matrix = f.evaluate(&args).ok()?;
        meets(goal, &matrix, tol).then_some(ImageWitness { matrix, args, sample })
    });
    found.ok_or_else(|| {
        let opts = ClassifyOptions { tol: tol.classify_tol, seed, ..ClassifyOptions::default() };
        Error::BudgetExhausted { goal: goal.to_string(), budget, verdict: classify_with(f, n, &opts).verdict }
    })
}
