use nalgebra::Schur;
use num_complex::Complex64;

use super::{ensure_square, CMatrix, ZERO};
use crate::error::{Error, Result};

const MAX_SCHUR_ITERATIONS: usize = 10_000;
const DEFLATION_LADDER: [f64; 4] = [1.0, 4.0, 16.0, 64.0];

/// Complex Schur factorization A = Q·T·Q*.
#[derive(Debug, Clone)]
pub struct SchurForm {
    /// Diagonal of `form`.
    pub eigenvalues: Vec<Complex64>,
    /// Upper triangular T.
    pub form: CMatrix,
    /// Unitary Q.
    pub unitary: CMatrix,
}

pub fn eigendecompose(a: &CMatrix) -> Result<SchurForm> {
    let n = ensure_square(a, "eigendecomposition input")?;
    if n == 0 {
        return Ok(SchurForm { eigenvalues: vec![], form: a.clone(), unitary: a.clone() });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    // QR iteration can stall on derogatory eigenvalues at the tightest deflation threshold.
    let schur = DEFLATION_LADDER
        .iter()
        .find_map(|&k| Schur::try_new(a.clone(), k * f64::EPSILON, MAX_SCHUR_ITERATIONS))
        .ok_or(Error::NonConvergence)?;
    let (unitary, mut form) = schur.unpack();
    for j in 0..n {
        for i in j + 1..n {
            form[(i, j)] = ZERO;
        }
    }
    let eigenvalues = form.diagonal().iter().copied().collect();
    Ok(SchurForm { eigenvalues, form, unitary })
}

pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    Ok(eigendecompose(a)?.eigenvalues)
}

impl SchurForm {
    /// Reorders the triangular form so that diagonal entries appear in
    /// nondecreasing `rank` order, keeping A = Q·T·Q*.
    ///
    /// `rank[i]` belongs to the eigenvalue currently at position i. Returns
    /// the ranks in their final order. Entries with different ranks must
    /// be distinct eigenvalues.
    pub(crate) fn reorder_by(&mut self, rank: &[usize]) -> Vec<usize> {
        let n = self.form.nrows();
        assert_eq!(rank.len(), n);
        let mut rank = rank.to_vec();
        // Bubble sort by adjacent unitary swaps; stable within a rank.
        loop {
            let mut swapped = false;
            for k in 0..n.saturating_sub(1) {
                if rank[k] > rank[k + 1] {
                    swap_adjacent(&mut self.form, &mut self.unitary, k);
                    rank.swap(k, k + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        self.eigenvalues = self.form.diagonal().iter().copied().collect();
        rank
    }
}

/// Swaps the diagonal entries k and k+1 of the triangular `t` by a plane
/// rotation G, updating T ← G*·T·G and Q ← Q·G.
fn swap_adjacent(t: &mut CMatrix, q: &mut CMatrix, k: usize) {
    let n = t.nrows();
    let a = t[(k, k)];
    let c = t[(k + 1, k + 1)];
    let b = t[(k, k + 1)];
    // Eigenvector of [[a, b], [0, c]] for c.
    let (mut x0, mut x1) = (b, c - a);
    let norm = (x0.norm_sqr() + x1.norm_sqr()).sqrt();
    if norm == 0.0 {
        return;
    }
    x0 /= norm;
    x1 /= norm;
    // G = [[x0, -conj(x1)], [x1, conj(x0)]]
    for j in 0..n {
        let u = t[(k, j)];
        let v = t[(k + 1, j)];
        t[(k, j)] = x0.conj() * u + x1.conj() * v;
        t[(k + 1, j)] = -x1 * u + x0 * v;
    }
    for i in 0..n {
        let u = t[(i, k)];
        let v = t[(i, k + 1)];
        t[(i, k)] = u * x0 + v * x1;
        t[(i, k + 1)] = -u * x1.conj() + v * x0.conj();
    }
    for i in 0..q.nrows() {
        let u = q[(i, k)];
        let v = q[(i, k + 1)];
        q[(i, k)] = u * x0 + v * x1;
        q[(i, k + 1)] = -u * x1.conj() + v * x0.conj();
    }
    t[(k + 1, k)] = ZERO;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, diag, frobenius, from_real_rows};

    fn sample(n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| {
            c64(((i * 7 + j * 3) % 5) as f64 - 2.0 + 0.1 * i as f64, ((i + 2 * j) % 3) as f64 - 1.0)
        })
    }

    fn reconstruction_error(a: &CMatrix, s: &SchurForm) -> f64 {
        frobenius(&(&s.unitary * &s.form * s.unitary.adjoint() - a))
    }

    #[test]
    fn diagonal_eigenvalues() {
        let s = eigendecompose(&diag(&[c64(1.0, 0.0), c64(2.0, 0.0)])).unwrap();
        let mut ev: Vec<f64> = s.eigenvalues.iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn nilpotent_is_strictly_upper() {
        let s = eigendecompose(&from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap();
        assert!(s.eigenvalues.iter().all(|z| z.norm() < 1e-15));
        assert!(s.form[(1, 0)].norm() == 0.0);
    }

    #[test]
    fn reconstruction_and_reordering() {
        let a = sample(6);
        let mut s = eigendecompose(&a).unwrap();
        assert!(reconstruction_error(&a, &s) <= 1e-12 * frobenius(&a));
        let before = s.eigenvalues.clone();
        // Move the eigenvalues with the smallest real part to the end.
        let rank: Vec<usize> = before.iter().map(|z| if z.re < 0.0 { 1 } else { 0 }).collect();
        let final_rank = s.reorder_by(&rank);
        assert!(final_rank.windows(2).all(|w| w[0] <= w[1]));
        assert!(reconstruction_error(&a, &s) <= 1e-12 * frobenius(&a));
        let unitarity = frobenius(&(s.unitary.adjoint() * &s.unitary - CMatrix::identity(6, 6)));
        assert!(unitarity < 1e-13);
        for (z, r) in s.eigenvalues.iter().zip(&final_rank) {
            assert_eq!(*r, usize::from(z.re < 0.0));
            assert!(before.iter().any(|w| (w - z).norm() < 1e-10));
        }
    }
}
