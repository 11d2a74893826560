//! Sylvester equations A₁·X − X·A₂ = C by the complex Bartels–Stewart method.

use num_complex::Complex64;

use super::{eigendecompose, frobenius, CMatrix};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Smallest distance between a member of `a` and a member of `b`.
pub fn spectral_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for x in a {
        for y in b {
            gap = gap.min((x - y).norm());
        }
    }
    gap
}

fn spectral_scale(a: &[Complex64], b: &[Complex64]) -> f64 {
    let s = a.iter().chain(b).map(|z| z.norm()).fold(0.0, f64::max);
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

/// Solves A₁·X − X·A₂ = C for X (p×q).
///
/// Fails with [`Error::SpectraOverlap`] when the spectra of A₁ and A₂ come
/// closer than `gap_tol` times their spectral scale, and with
/// [`Error::IllConditioned`] when the backward error
/// ‖A₁X − XA₂ − C‖ / (‖A₁‖‖X‖ + ‖X‖‖A₂‖ + ‖C‖) exceeds `solve_tol`.
pub fn sylvester_solve(a1: &CMatrix, a2: &CMatrix, c: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let p = a1.nrows();
    let q = a2.nrows();
    if a1.ncols() != p || a2.ncols() != q || c.nrows() != p || c.ncols() != q {
        return Err(Error::DimensionMismatch(format!(
            "sylvester: A1 {}x{}, A2 {}x{}, C {}x{}",
            a1.nrows(),
            a1.ncols(),
            a2.nrows(),
            a2.ncols(),
            c.nrows(),
            c.ncols()
        )));
    }
    if p == 0 || q == 0 {
        return Ok(CMatrix::zeros(p, q));
    }
    let s1 = eigendecompose(a1)?;
    let s2 = eigendecompose(a2)?;
    let gap = spectral_gap(&s1.eigenvalues, &s2.eigenvalues);
    let bound = tol.gap_tol * spectral_scale(&s1.eigenvalues, &s2.eigenvalues);
    if !(gap > bound) {
        return Err(Error::SpectraOverlap { gap, bound });
    }

    // T₁·Y − Y·T₂ = F with F = Q₁*·C·Q₂, solved column by column.
    let t1 = &s1.form;
    let t2 = &s2.form;
    let f = s1.unitary.adjoint() * c * &s2.unitary;
    let mut y = CMatrix::zeros(p, q);
    for j in 0..q {
        let mut rhs: Vec<Complex64> = (0..p).map(|i| f[(i, j)]).collect();
        for k in 0..j {
            let coeff = t2[(k, j)];
            if coeff != Complex64::new(0.0, 0.0) {
                for (i, r) in rhs.iter_mut().enumerate() {
                    *r += coeff * y[(i, k)];
                }
            }
        }
        let shift = t2[(j, j)];
        for i in (0..p).rev() {
            let mut acc = rhs[i];
            for l in i + 1..p {
                acc -= t1[(i, l)] * y[(l, j)];
            }
            y[(i, j)] = acc / (t1[(i, i)] - shift);
        }
    }
    let x = &s1.unitary * y * s2.unitary.adjoint();

    let residual = frobenius(&(a1 * &x - &x * a2 - c));
    let scale = frobenius(a1) * frobenius(&x) + frobenius(&x) * frobenius(a2) + frobenius(c);
    let relative = if scale > 0.0 { residual / scale } else { residual };
    if !(relative <= tol.solve_tol) {
        return Err(Error::IllConditioned { residual: relative, bound: tol.solve_tol });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, from_real_rows};

    #[test]
    fn scalar_case() {
        let x = sylvester_solve(
            &from_real_rows(&[&[1.0]]),
            &from_real_rows(&[&[2.0]]),
            &from_real_rows(&[&[3.0]]),
            &Tolerances::default(),
        )
        .unwrap();
        assert!((x[(0, 0)] - c64(-3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_right_hand_side() {
        let a1 = from_real_rows(&[&[1.0, 4.0], &[0.0, 2.0]]);
        let a2 = from_real_rows(&[&[-1.0]]);
        let x = sylvester_solve(&a1, &a2, &CMatrix::zeros(2, 1), &Tolerances::default()).unwrap();
        assert_eq!(frobenius(&x), 0.0);
    }

    #[test]
    fn overlapping_spectra_rejected() {
        let a = from_real_rows(&[&[1.0, 1.0], &[0.0, 2.0]]);
        let b = from_real_rows(&[&[2.0]]);
        let err = sylvester_solve(&a, &b, &CMatrix::zeros(2, 1), &Tolerances::default());
        assert!(matches!(err, Err(Error::SpectraOverlap { .. })));
    }
}
