use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{block_diagonalize_grouped, cluster_eigenvalues};
use crate::error::{Error, Result};
use crate::linalg::{eigendecompose, ensure_square, CMatrix, SimilarityCertificate};
use crate::tolerances::Tolerances;
use crate::unitaries::BlockPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionCase {
    /// Two blocks of size n/2.
    A,
    /// Three blocks, each smaller than n/2.
    B,
}

/// B = T·blkdiag(B₁, B₂[, B₃])·T⁻¹ with pairwise disjoint block spectra.
#[derive(Debug, Clone)]
pub struct SpectralPartition {
    pub case: PartitionCase,
    pub block_sizes: Vec<usize>,
    pub blocks: Vec<CMatrix>,
    pub block_spectra: Vec<Vec<Complex64>>,
    /// from = blkdiag(blocks), to = B.
    pub to_block_diag: SimilarityCertificate,
}

impl SpectralPartition {
    pub fn n(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    /// The hollow-block pattern with these block sizes.
    pub fn pattern(&self) -> BlockPattern {
        BlockPattern::from_sizes(&self.block_sizes).expect("partition sizes form a valid pattern")
    }
}

/// Splits the spectrum of B into two halves (case A) or three parts each
/// smaller than n/2 (case B), provided no eigenvalue has multiplicity above
/// n/2.
///
/// Clusters are taken in sorted order. Case A is chosen if one cluster has
/// size exactly n/2, or if the longest prefix of clusters of total size at
/// most n/2 reaches n/2 exactly; otherwise that prefix, the next cluster,
/// and the rest form the three parts.
pub fn partition_spectrum(b: &CMatrix, tol: &Tolerances) -> Result<SpectralPartition> {
    let n = ensure_square(b, "partitioned matrix")?;
    if n < 2 {
        return Err(Error::InvalidInput("spectral partition needs n ≥ 2".into()));
    }
    let schur = eigendecompose(b)?;
    let clusters = cluster_eigenvalues(&schur.eigenvalues, tol.cluster_tol);
    if let Some(c) = clusters.iter().find(|c| 2 * c.multiplicity > n) {
        return Err(Error::MultiplicityTooLarge { value: c.value, multiplicity: c.multiplicity, n });
    }

    // part_of[k] = part that cluster k goes to.
    let mut part_of = vec![0usize; clusters.len()];
    let case;
    if let Some(half) = (n % 2 == 0).then(|| clusters.iter().position(|c| 2 * c.multiplicity == n)).flatten() {
        case = PartitionCase::A;
        for (k, p) in part_of.iter_mut().enumerate() {
            *p = usize::from(k != half);
        }
    } else {
        let mut prefix = 0;
        let mut j = 0;
        while j < clusters.len() && 2 * (prefix + clusters[j].multiplicity) <= n {
            prefix += clusters[j].multiplicity;
            j += 1;
        }
        if 2 * prefix == n {
            case = PartitionCase::A;
            for p in part_of.iter_mut().skip(j) {
                *p = 1;
            }
        } else {
            case = PartitionCase::B;
            for (k, p) in part_of.iter_mut().enumerate() {
                *p = if k < j {
                    0
                } else if k == j {
                    1
                } else {
                    2
                };
            }
        }
    }
    let parts = if case == PartitionCase::A { 2 } else { 3 };

    let mut group = vec![0usize; n];
    for (k, c) in clusters.iter().enumerate() {
        for &i in &c.members {
            group[i] = part_of[k];
        }
    }
    let (blocks, cert, block_spectra) = block_diagonalize_grouped(b, schur, &group, parts, tol)?;
    let block_sizes: Vec<usize> = blocks.iter().map(|blk| blk.nrows()).collect();
    match case {
        PartitionCase::A => debug_assert!(block_sizes.iter().all(|&s| 2 * s == n)),
        PartitionCase::B => debug_assert!(block_sizes.iter().all(|&s| s >= 1 && 2 * s < n)),
    }
    Ok(SpectralPartition { case, block_sizes, blocks, block_spectra, to_block_diag: cert })
}
