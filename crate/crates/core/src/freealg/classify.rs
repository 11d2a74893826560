use std::fmt;

use serde::{Deserialize, Serialize};

use super::NcPolynomial;
use crate::linalg::{distance_to_scalars, frobenius, CMatrix};
use crate::sampling::random_tuple;

/// Probabilistic classification of f on M_n(ℂ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    /// Every sampled image vanished.
    Identity,
    /// Every sampled image was scalar, not all zero.
    Central,
    /// f^k central for this k, lower powers not.
    KCentral(u32),
    Generic,
}

impl Verdict {
    /// Neither an identity nor central: the hypothesis of the four-term theorem.
    pub fn is_noncentral(self) -> bool {
        matches!(self, Verdict::Generic | Verdict::KCentral(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Identity => f.write_str("identity"),
            Verdict::Central => f.write_str("central"),
            Verdict::KCentral(k) => write!(f, "{k}-central"),
            Verdict::Generic => f.write_str("generic"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PolyClass {
    pub verdict: Verdict,
    pub samples: usize,
    pub tolerance: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub samples: usize,
    pub tol: f64,
    /// Largest power tried for k-centrality.
    pub k_max: u32,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { samples: 32, tol: 1e-8, k_max: 4, seed: 0 }
    }
}

struct Sample {
    image: CMatrix,
    scale: f64,
}

fn vanishes(samples: &[(CMatrix, f64)], tol: f64) -> bool {
    samples.iter().all(|(m, s)| frobenius(m) <= tol * s)
}

fn all_scalar(samples: &[(CMatrix, f64)], tol: f64) -> bool {
    samples.iter().all(|(m, s)| distance_to_scalars(m) <= tol * s)
}

/// Classifies f on `samples` seeded random tuples of standard complex
/// Gaussian n×n matrices.
///
/// An image counts as zero (resp. scalar) when its norm (resp. distance to
/// the scalars) is at most `tol` times the magnitude bound
/// Σ|c|·∏‖aᵢ‖ of the evaluated terms, so rounding noise in a true identity
/// is not mistaken for a nonzero value.
pub fn classify(f: &NcPolynomial, n: usize, samples: usize, tol: f64, seed: u64) -> PolyClass {
    classify_with(f, n, &ClassifyOptions { samples, tol, seed, ..ClassifyOptions::default() })
}

pub fn classify_with(f: &NcPolynomial, n: usize, opts: &ClassifyOptions) -> PolyClass {
    let n = n.max(1);
    let samples = opts.samples.max(1);
    let m = f.num_vars().max(1);
    let drawn: Vec<Sample> = (0..samples as u64)
        .map(|i| {
            let args = random_tuple(opts.seed, i, m, n);
            let image = f.evaluate(&args).expect("sampled tuple matches the polynomial");
            let scale = f.magnitude_bound(&args).max(f64::MIN_POSITIVE);
            Sample { image, scale }
        })
        .collect();
    let class = |verdict| PolyClass { verdict, samples, tolerance: opts.tol, n };

    let first: Vec<(CMatrix, f64)> = drawn.iter().map(|s| (s.image.clone(), s.scale)).collect();
    if vanishes(&first, opts.tol) {
        return class(Verdict::Identity);
    }
    if all_scalar(&first, opts.tol) {
        return class(Verdict::Central);
    }
    let mut powers = first.clone();
    for k in 2..=opts.k_max {
        for ((acc, scale), (base, base_scale)) in powers.iter_mut().zip(&first) {
            *acc = &*acc * base;
            *scale *= base_scale;
        }
        if !vanishes(&powers, opts.tol) && all_scalar(&powers, opts.tol) {
            return class(Verdict::KCentral(k));
        }
    }
    class(Verdict::Generic)
}
