use crate::error::{Error, Result};
use crate::linalg::{from_real_rows, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectorSign {
    Plus,
    Minus,
}

/// R_q (sign +) or R_q⁻ (sign −): the rank-one orthogonal projector
/// [[q, ±√(q(1−q))], [±√(q(1−q)), 1−q]].
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorPair {
    pub q: f64,
    pub sign: ProjectorSign,
    pub matrix: CMatrix,
}

fn check_unit_interval(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("q = {q} must lie in (0, 1)")))
    }
}

pub fn make_projector(q: f64, sign: ProjectorSign) -> Result<ProjectorPair> {
    check_unit_interval(q)?;
    let off = (q * (1.0 - q)).sqrt() * if sign == ProjectorSign::Plus { 1.0 } else { -1.0 };
    let matrix = from_real_rows(&[&[q, off], &[off, 1.0 - q]]);
    Ok(ProjectorPair { q, sign, matrix })
}

/// P₂ = diag(1, 0).
pub fn p2() -> CMatrix {
    from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]])
}

/// The rotation G with columns (√q, √(1−q)) and (−√(1−q), √q), so that
/// G·P₂·G* = R_q and G·(I − P₂)·G* = R⁻_{1−q}.
pub fn conjugating_rotation(q: f64) -> Result<CMatrix> {
    check_unit_interval(q)?;
    let (a, b) = (q.sqrt(), (1.0 - q).sqrt());
    Ok(from_real_rows(&[&[a, -b], &[b, a]]))
}

/// The 3×3 unitary with columns (1,1,0)/√2, (1,−1,1)/√3, (1,−1,−2)/√6. It
/// carries the pair diag(1,0,0), diag(0,1,0) onto the projector pair
/// returned by [`corner_targets`].
pub fn corner_unitary() -> CMatrix {
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    from_real_rows(&[
        &[1.0 / s2, 1.0 / s3, 1.0 / s6],
        &[1.0 / s2, -1.0 / s3, -1.0 / s6],
        &[0.0, 1.0 / s3, -2.0 / s6],
    ])
}

/// (T₀, S₀) = (diag(1,0,0), diag(0,1,0)).
pub fn corner_projectors() -> (CMatrix, CMatrix) {
    let t0 = from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
    let s0 = from_real_rows(&[&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]]);
    (t0, s0)
}

/// (K₀, L₀): the rank-one projectors onto (1,1,0)/√2 and (1,−1,1)/√3.
pub fn corner_targets() -> (CMatrix, CMatrix) {
    let h = 0.5;
    let k0 = from_real_rows(&[&[h, h, 0.0], &[h, h, 0.0], &[0.0, 0.0, 0.0]]);
    let t = 1.0 / 3.0;
    let l0 = from_real_rows(&[&[t, -t, t], &[-t, t, -t], &[t, -t, t]]);
    (k0, l0)
}
