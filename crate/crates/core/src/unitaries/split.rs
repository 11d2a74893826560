use serde::{Deserialize, Serialize};

use super::decoupling::build_decoupling_unitary;
use super::pattern::BlockPattern;
use crate::error::{Error, Result};
use crate::linalg::{ensure_square, CompleteOrthogonal, frobenius, max_abs_diagonal, zeros, CMatrix};
use crate::tolerances::Tolerances;

/// M = C₁ + U·C₂·U* with C₁, C₂ ∈ 𝒱.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HollowSplit {
    #[serde(with = "crate::linalg::json::matrix")]
    pub u: CMatrix,
    pub pattern: BlockPattern,
    #[serde(with = "crate::linalg::json::matrix")]
    pub c1: CMatrix,
    #[serde(with = "crate::linalg::json::matrix")]
    pub c2: CMatrix,
    pub residual: f64,
}

/// A factored split system for one pattern, reusable across matrices.
pub struct HollowSplitter {
    pattern: BlockPattern,
    u: CMatrix,
    entries: Vec<(usize, usize)>,
    system: CompleteOrthogonal,
}

impl HollowSplitter {
    pub fn new(pattern: &BlockPattern, tol: &Tolerances) -> Result<Self> {
        let (u, _) = build_decoupling_unitary(pattern)?;
        let n = pattern.n();
        let entries = pattern.off_block_entries();
        let d = entries.len();
        let mut system = zeros(n * n, 2 * d);
        for (k, &(i, j)) in entries.iter().enumerate() {
            system[(i + j * n, k)] = crate::linalg::ONE;
            for b in 0..n {
                let right = u[(b, j)].conj();
                for a in 0..n {
                    system[(a + b * n, d + k)] = u[(a, i)] * right;
                }
            }
        }
        let system = CompleteOrthogonal::new(&system, tol.rank_tol);
        Ok(Self { pattern: *pattern, u, entries, system })
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.u
    }

    pub fn split(&self, m: &CMatrix, tol: &Tolerances) -> Result<HollowSplit> {
        let n = ensure_square(m, "split matrix")?;
        if n != self.pattern.n() {
            return Err(Error::DimensionMismatch(format!("matrix is {n}x{n}, pattern {} has size {}", self.pattern, self.pattern.n())));
        }
        let norm = frobenius(m);
        let max_diag = max_abs_diagonal(m);
        if max_diag > tol.hollow_tol * norm.max(1.0) {
            return Err(Error::NotHollow { max_diag });
        }
        let rhs = CMatrix::from_column_slice(n * n, 1, m.as_slice());
        let x = self.system.solve(&rhs)?;
        let d = self.entries.len();
        let mut c1 = zeros(n, n);
        let mut c2 = zeros(n, n);
        for (k, &(i, j)) in self.entries.iter().enumerate() {
            c1[(i, j)] = x[k];
            c2[(i, j)] = x[d + k];
        }
        let residual = frobenius(&(m - &c1 - &self.u * &c2 * self.u.adjoint()));
        let bound = tol.split_tol * norm.max(1.0);
        if !(residual <= bound) {
            return Err(Error::ResidualTooLarge { residual, bound });
        }
        Ok(HollowSplit { u: self.u.clone(), pattern: self.pattern, c1, c2, residual })
    }
}

/// Minimal-norm C₁, C₂ ∈ 𝒱(pattern) with M = C₁ + U·C₂·U*.
pub fn split_hollow(m: &CMatrix, pattern: &BlockPattern, tol: &Tolerances) -> Result<HollowSplit> {
    HollowSplitter::new(pattern, tol)?.split(m, tol)
}
