//! Dense complex matrix substrate.
//!
//! Everything works on [`CMatrix`] (`nalgebra::DMatrix<Complex64>`). Sizes in
//! this crate are small (n ≤ 64), so all routines are dense and direct.

mod certificate;
pub mod json;
mod lstsq;
mod schur;
mod subspace;
mod sylvester;

pub use certificate::SimilarityCertificate;
pub use schur::{eigendecompose, eigenvalues, SchurForm};
pub use lstsq::{numerical_rank, CompleteOrthogonal};
pub use subspace::{joint_commutant_dimension, subspace_sum_rank, SubspaceBasis};
pub use sylvester::{spectral_gap, sylvester_solve};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

/// Builds a matrix from real row-major entries.
pub fn from_real_rows(rows: &[&[f64]]) -> CMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    CMatrix::from_fn(r, c, |i, j| c64(rows[i][j], 0.0))
}

pub fn diag(values: &[Complex64]) -> CMatrix {
    let n = values.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO })
}

/// Matrix unit E_ij of size n.
pub fn unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = zeros(n, n);
    m[(i, j)] = ONE;
    m
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.norm()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn is_square(m: &CMatrix) -> bool {
    m.nrows() == m.ncols()
}

pub fn ensure_square(m: &CMatrix, what: &str) -> Result<usize> {
    if is_square(m) {
        Ok(m.nrows())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )))
    }
}

pub fn max_abs_diagonal(m: &CMatrix) -> f64 {
    m.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Distance to the scalar matrices, ‖M − (tr M / n)·I‖_F.
pub fn distance_to_scalars(m: &CMatrix) -> f64 {
    frobenius(&project_traceless(m))
}

/// Removes the scalar part: A − (tr A / n)·I.
pub fn project_traceless(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let shift = trace(a) / n as f64;
    let mut out = a.clone();
    for i in 0..n {
        out[(i, i)] -= shift;
    }
    // One correction pass absorbs the rounding of the first subtraction.
    let rest = trace(&out) / n as f64;
    for i in 0..n {
        out[(i, i)] -= rest;
    }
    out
}

/// Explicit inverse by LU with partial pivoting.
pub fn inverse(t: &CMatrix) -> Result<CMatrix> {
    ensure_square(t, "inverted matrix")?;
    t.clone().try_inverse().ok_or(Error::Singular)
}

/// Block diagonal matrix with the given square blocks.
pub fn block_diagonal(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(n, n);
    let mut at = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((at, at), (k, k)).copy_from(b);
        at += k;
    }
    out
}

/// Start offsets of consecutive blocks with the given sizes.
pub fn block_offsets(sizes: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in sizes {
        offsets.push(at);
        at += s;
    }
    offsets
}

/// Block index of every row for a consecutive block layout.
pub fn block_labels(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
        .collect()
}

/// ‖T‖_F · ‖T⁻¹‖_F.
pub fn condition_estimate(t: &CMatrix, t_inv: &CMatrix) -> f64 {
    frobenius(t) * frobenius(t_inv)
}

/// Conjugate `x` by `t`: T·X·T⁻¹.
pub fn conjugate(t: &CMatrix, x: &CMatrix, t_inv: &CMatrix) -> CMatrix {
    t * x * t_inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn project_traceless_examples() {
        assert_eq!(frobenius(&project_traceless(&identity(2))), 0.0);
        let a = from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let p = project_traceless(&a);
        assert_eq!(p, from_real_rows(&[&[0.5, 0.0], &[0.0, -0.5]]));
        let t = from_real_rows(&[&[1.0, 2.0], &[3.0, -1.0]]);
        assert_eq!(project_traceless(&t), t);
    }

    #[test]
    fn project_traceless_kills_trace_of_random() {
        let a = CMatrix::from_fn(5, 5, |i, j| c64((i * 3 + j) as f64 * 0.37 - 1.1, (j as f64).sin()));
        let p = project_traceless(&a);
        assert!(trace(&p).norm() <= 1e-14 * frobenius(&a));
    }

    #[test]
    fn block_diagonal_layout() {
        let b = block_diagonal(&[diag(&[ONE]), diag(&[c64(2.0, 0.0), c64(3.0, 0.0)])]);
        assert_eq!(b, diag(&[ONE, c64(2.0, 0.0), c64(3.0, 0.0)]));
        assert_eq!(block_labels(&[2, 1]), vec![0, 0, 1]);
        assert_eq!(block_offsets(&[2, 1, 3]), vec![0, 2, 3]);
    }
}
