use serde::{Deserialize, Serialize};

use super::params::{assign_parameters, ParameterAssignment};
use super::pattern::BlockPattern;
use super::projector::{conjugating_rotation, corner_unitary};
use crate::error::{Error, Result};
use crate::linalg::{block_diagonal, frobenius, identity, zeros, CMatrix, ONE};

/// The permutation and block rotation behind a decoupling unitary:
/// U = Pᵀ·W·P with P·eₖ-rows given by `order` (position k of the permuted
/// frame holds original index `order[k]`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecouplingLayout {
    pub pattern: BlockPattern,
    pub order: Vec<usize>,
    #[serde(with = "crate::linalg::json::matrix")]
    pub frame_unitary: CMatrix,
    pub params: ParameterAssignment,
    pub corner: bool,
}

impl DecouplingLayout {
    /// P with P[k, order[k]] = 1, so P·X·Pᵀ is X in the permuted frame.
    pub fn permutation(&self) -> CMatrix {
        let n = self.order.len();
        let mut p = zeros(n, n);
        for (k, &i) in self.order.iter().enumerate() {
            p[(k, i)] = ONE;
        }
        p
    }

    pub fn unitary(&self) -> CMatrix {
        let p = self.permutation();
        p.transpose() * &self.frame_unitary * p
    }
}

fn rotations(params: &[f64]) -> Result<Vec<CMatrix>> {
    params.iter().map(|&q| conjugating_rotation(q)).collect()
}

/// The unitary U for which only diagonal matrices commute with the pattern
/// projectors and their U-conjugates.
///
/// Halves: index i is paired with n/2 + i and rotated by G_{qᵢ}. Triples: a
/// 3×3 corner on one index of each block when n is odd, then
/// n/2 − q pairs (first, third), p + q − n/2 pairs (first, second) and
/// n/2 − p pairs (second, third) of the remaining indices.
pub fn build_decoupling_unitary(pattern: &BlockPattern) -> Result<(CMatrix, DecouplingLayout)> {
    pattern.validate()?;
    let (order, params, corner, blocks) = match *pattern {
        BlockPattern::Halves { half } => {
            let order = (0..half).flat_map(|i| [i, half + i]).collect();
            let params = assign_parameters(half, 0, 0, false);
            let blocks = rotations(&params.qs)?;
            (order, params, false, blocks)
        }
        BlockPattern::Triple { p, q, r } => {
            let n = p + q + r;
            let corner = n % 2 == 1;
            let mut ps = 0..p;
            let mut qs = p..p + q;
            let mut rs = p + q..n;
            let mut order = Vec::with_capacity(n);
            let mut blocks = Vec::new();
            let (mut p1, mut q1, mut r1c, mut n1) = (p, q, r, n);
            if corner {
                order.extend([ps.next(), qs.next(), rs.next()].into_iter().flatten());
                blocks.push(corner_unitary());
                (p1, q1, r1c, n1) = (p - 1, q - 1, r - 1, n - 3);
            }
            let half = n1 / 2;
            let (Some(g1), Some(g2), Some(g3)) =
                (half.checked_sub(q1), (p1 + q1).checked_sub(half), half.checked_sub(p1))
            else {
                return Err(Error::InvalidPattern(format!("pattern {pattern} admits no pairing")));
            };
            if g1 + g2 != p1 || g2 + g3 != q1 || g1 + g3 != r1c {
                return Err(Error::InvalidPattern(format!("pattern {pattern} admits no pairing")));
            }
            for _ in 0..g1 {
                order.extend([ps.next(), rs.next()].into_iter().flatten());
            }
            for _ in 0..g2 {
                order.extend([ps.next(), qs.next()].into_iter().flatten());
            }
            for _ in 0..g3 {
                order.extend([qs.next(), rs.next()].into_iter().flatten());
            }
            let params = assign_parameters(g1, g2, g3, corner);
            blocks.extend(rotations(&params.qs)?);
            blocks.extend(rotations(&params.ts)?);
            blocks.extend(rotations(&params.ss)?);
            (order, params, corner, blocks)
        }
    };
    let frame_unitary = block_diagonal(&blocks);
    let layout = DecouplingLayout { pattern: *pattern, order, frame_unitary, params, corner };
    debug_assert_eq!(layout.order.len(), pattern.n());
    let u = layout.unitary();
    let n = pattern.n();
    let defect = frobenius(&(u.adjoint() * &u - identity(n)));
    if defect > 1e-12 {
        return Err(Error::CertificateFailure { what: "decoupling unitarity".into(), value: defect, bound: 1e-12 });
    }
    Ok((u, layout))
}
