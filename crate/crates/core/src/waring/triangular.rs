use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{block_diagonal, block_labels, identity, sylvester_solve, zeros, CMatrix, SimilarityCertificate, ZERO};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Upper,
    Lower,
}

fn check_structure(sizes: &[usize], off_diag: &CMatrix, orientation: Orientation) -> Result<()> {
    let labels = block_labels(sizes);
    let n = labels.len();
    if off_diag.nrows() != n || off_diag.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "off-diagonal part is {}x{}, blocks total {n}",
            off_diag.nrows(),
            off_diag.ncols()
        )));
    }
    for j in 0..n {
        for i in 0..n {
            let allowed = match orientation {
                Orientation::Upper => labels[i] < labels[j],
                Orientation::Lower => labels[i] > labels[j],
            };
            if !allowed && off_diag[(i, j)] != ZERO {
                return Err(Error::InvalidStructure(format!(
                    "entry ({i}, {j}) lies outside the strictly {} block part",
                    if orientation == Orientation::Upper { "upper" } else { "lower" }
                )));
            }
        }
    }
    Ok(())
}

/// (T, T⁻¹) with T·blkdiag(blocks)·T⁻¹ = blkdiag(blocks) + off_diag, peeling
/// the first block and solving one Sylvester equation per level.
fn transform(blocks: &[CMatrix], off: &CMatrix, orientation: Orientation, tol: &Tolerances) -> Result<(CMatrix, CMatrix)> {
    let n = off.nrows();
    if blocks.len() <= 1 {
        return Ok((identity(n), identity(n)));
    }
    let k = blocks[0].nrows();
    let rest = n - k;
    let sub = off.view((k, k), (rest, rest)).into_owned();
    let (t2, t2_inv) = transform(&blocks[1..], &sub, orientation, tol)?;
    let target22 = block_diagonal(&blocks[1..]) + &sub;
    let a1 = &blocks[0];

    let mut t = zeros(n, n);
    let mut t_inv = zeros(n, n);
    t.view_mut((0, 0), (k, k)).copy_from(&identity(k));
    t_inv.view_mut((0, 0), (k, k)).copy_from(&identity(k));
    t.view_mut((k, k), (rest, rest)).copy_from(&t2);
    t_inv.view_mut((k, k), (rest, rest)).copy_from(&t2_inv);
    match orientation {
        Orientation::Upper => {
            let c = off.view((0, k), (k, rest)).into_owned();
            if c.iter().any(|z| *z != ZERO) {
                let x = sylvester_solve(a1, &target22, &(-&c), tol)?;
                t.view_mut((0, k), (k, rest)).copy_from(&(&x * &t2));
                t_inv.view_mut((0, k), (k, rest)).copy_from(&(-x));
            }
        }
        Orientation::Lower => {
            let c = off.view((k, 0), (rest, k)).into_owned();
            if c.iter().any(|z| *z != ZERO) {
                let x = sylvester_solve(&target22, a1, &(-&c), tol)?;
                t_inv.view_mut((k, 0), (rest, k)).copy_from(&(-(&t2_inv * &x)));
                t.view_mut((k, 0), (rest, k)).copy_from(&x);
            }
        }
    }
    Ok((t, t_inv))
}

/// Certificate that blkdiag(blocks) is similar to blkdiag(blocks) + off_diag
/// when the block spectra are pairwise disjoint. `off_diag` must vanish on
/// and below (upper) or on and above (lower) the block diagonal.
pub fn block_triangular_similarity(
    blocks: &[CMatrix],
    off_diag: &CMatrix,
    orientation: Orientation,
    tol: &Tolerances,
) -> Result<SimilarityCertificate> {
    if blocks.is_empty() {
        return Err(Error::InvalidInput("no diagonal blocks".into()));
    }
    if let Some(b) = blocks.iter().find(|b| b.nrows() != b.ncols() || b.nrows() == 0) {
        return Err(Error::DimensionMismatch(format!("diagonal block is {}x{}", b.nrows(), b.ncols())));
    }
    let sizes: Vec<usize> = blocks.iter().map(|b| b.nrows()).collect();
    check_structure(&sizes, off_diag, orientation)?;
    let (t, t_inv) = transform(blocks, off_diag, orientation, tol)?;
    let from = block_diagonal(blocks);
    let to = &from + off_diag;
    let cert = SimilarityCertificate::new(t, t_inv, from, to)?;
    cert.check(tol.cert_tol)?;
    Ok(cert)
}
