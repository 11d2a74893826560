use nalgebra::linalg::ColPivQR;

use super::{identity, CMatrix};
use crate::error::{Error, Result};

/// K·P = Q₁·T*·Z* with P a column permutation, Q₁ and Z with orthonormal
/// columns, and T upper triangular of size rank × rank.
#[derive(Debug, Clone)]
pub struct CompleteOrthogonal {
    rank: usize,
    rows: usize,
    q1: CMatrix,
    t: CMatrix,
    z: CMatrix,
    perm: CMatrix,
}

fn pivoted_qr(k: &CMatrix) -> (CMatrix, CMatrix, CMatrix) {
    let qr = ColPivQR::new(k.clone());
    let mut perm = identity(k.ncols());
    qr.p().permute_columns(&mut perm);
    (qr.q(), qr.r(), perm)
}

/// Rank from the pivoted QR diagonal: entries above `rank_tol` times the
/// largest.
fn rank_of(r: &CMatrix, rank_tol: f64) -> usize {
    let d = r.nrows().min(r.ncols());
    let top = (0..d).map(|i| r[(i, i)].norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    (0..d).take_while(|&i| r[(i, i)].norm() > rank_tol * top).count()
}

impl CompleteOrthogonal {
    pub fn new(k: &CMatrix, rank_tol: f64) -> Self {
        let rows = k.nrows();
        if rows == 0 || k.ncols() == 0 {
            return Self { rank: 0, rows, q1: CMatrix::zeros(rows, 0), t: CMatrix::zeros(0, 0), z: CMatrix::zeros(k.ncols(), 0), perm: identity(k.ncols()) };
        }
        let (q, r, perm) = pivoted_qr(k);
        let rank = rank_of(&r, rank_tol);
        let q1 = q.columns(0, rank).into_owned();
        let r1 = r.rows(0, rank).into_owned();
        let second = nalgebra::QR::new(r1.adjoint());
        let z = second.q();
        let t = second.r();
        Self { rank, rows, q1, t, z, perm }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The minimal-norm least-squares solution of K·x = b.
    pub fn solve(&self, b: &CMatrix) -> Result<CMatrix> {
        if b.nrows() != self.rows {
            return Err(Error::DimensionMismatch(format!("right side has {} rows, system has {}", b.nrows(), self.rows)));
        }
        let y = self.q1.adjoint() * b;
        let w = self.t.adjoint().solve_lower_triangular(&y).ok_or(Error::Singular)?;
        Ok(&self.perm * (&self.z * w))
    }
}

/// Number of independent columns, from a column-pivoted QR factorization.
pub fn numerical_rank(m: &CMatrix, rank_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    rank_of(&pivoted_qr(m).1, rank_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, frobenius, from_real_rows};
    use crate::sampling::{gaussian_matrix, sample_rng};

    #[test]
    fn underdetermined_minimal_norm() {
        // x + y = 2 has minimal-norm solution (1, 1).
        let k = from_real_rows(&[&[1.0, 1.0]]);
        let x = CompleteOrthogonal::new(&k, 1e-12).solve(&from_real_rows(&[&[2.0]])).unwrap();
        assert!(frobenius(&(x - from_real_rows(&[&[1.0], &[1.0]]))) < 1e-14);
    }

    #[test]
    fn rank_deficient_matches_normal_equations() {
        let mut rng = sample_rng(2, 0);
        let a = gaussian_matrix(&mut rng, 6);
        // 6 x 9 of rank 3.
        let k = a.columns(0, 3) * gaussian_matrix(&mut rng, 9).rows(0, 3);
        let cod = CompleteOrthogonal::new(&k, 1e-10);
        assert_eq!(cod.rank(), 3);
        let b = &k * gaussian_matrix(&mut rng, 9).columns(0, 1);
        let x = cod.solve(&b).unwrap();
        assert!(frobenius(&(&k * &x - &b)) < 1e-10 * frobenius(&b));
        // Minimal norm: x lies in the row space, i.e. x = K*·y.
        let y = CompleteOrthogonal::new(&k.adjoint(), 1e-10).solve(&x).unwrap();
        assert!(frobenius(&(k.adjoint() * y - &x)) < 1e-10 * frobenius(&x));
    }

    #[test]
    fn ranks() {
        assert_eq!(numerical_rank(&CMatrix::zeros(3, 3), 1e-10), 0);
        assert_eq!(numerical_rank(&identity(4), 1e-10), 4);
        let m = from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]) * c64(0.0, 1.0);
        assert_eq!(numerical_rank(&m, 1e-10), 1);
    }
}
