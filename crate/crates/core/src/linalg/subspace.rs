use super::{numerical_rank, CMatrix, ZERO};
use crate::error::{Error, Result};

/// A spanning set for a linear subspace of M_n(ℂ).
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub n: usize,
    pub basis: Vec<CMatrix>,
}

impl SubspaceBasis {
    pub fn new(n: usize, basis: Vec<CMatrix>) -> Result<Self> {
        if let Some(bad) = basis.iter().find(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::DimensionMismatch(format!(
                "basis member is {}x{}, expected {n}x{n}",
                bad.nrows(),
                bad.ncols()
            )));
        }
        Ok(Self { n, basis })
    }

    /// The image under X ↦ U·X·U*.
    pub fn conjugated(&self, u: &CMatrix) -> Self {
        let ua = u.adjoint();
        Self { n: self.n, basis: self.basis.iter().map(|b| u * b * &ua).collect() }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Columns are the vectorized basis members.
    pub fn vectorized(&self) -> CMatrix {
        let n2 = self.n * self.n;
        let mut out = CMatrix::zeros(n2, self.basis.len());
        for (k, b) in self.basis.iter().enumerate() {
            out.column_mut(k).copy_from_slice(b.as_slice());
        }
        out
    }
}

/// Dimension of V1 + V2.
pub fn subspace_sum_rank(v1: &SubspaceBasis, v2: &SubspaceBasis, rank_tol: f64) -> Result<usize> {
    if v1.n != v2.n {
        return Err(Error::DimensionMismatch(format!(
            "subspaces live in M_{} and M_{}",
            v1.n, v2.n
        )));
    }
    let a = v1.vectorized();
    let b = v2.vectorized();
    let mut stacked = CMatrix::zeros(v1.n * v1.n, a.ncols() + b.ncols());
    stacked.columns_mut(0, a.ncols()).copy_from(&a);
    stacked.columns_mut(a.ncols(), b.ncols()).copy_from(&b);
    Ok(numerical_rank(&stacked, rank_tol))
}

/// Dimension of {A : A·M = M·A for every M in `mats`}, as the nullity of
/// the stacked linear map X ↦ (X·M − M·X)_M.
pub fn joint_commutant_dimension(mats: &[CMatrix], rank_tol: f64) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Err(Error::InvalidInput("commutant of an empty family".into()));
    };
    let n = first.nrows();
    if let Some(bad) = mats.iter().find(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::DimensionMismatch(format!(
            "commutant family mixes {n}x{n} with {}x{}",
            bad.nrows(),
            bad.ncols()
        )));
    }
    let n2 = n * n;
    let mut op = CMatrix::zeros(mats.len() * n2, n2);
    let mut unit = CMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            unit[(i, j)] = super::ONE;
            let col = i + j * n;
            for (k, m) in mats.iter().enumerate() {
                let image = &unit * m - m * &unit;
                op.view_mut((k * n2, col), (n2, 1)).copy_from_slice(image.as_slice());
            }
            unit[(i, j)] = ZERO;
        }
    }
    Ok(n2 - numerical_rank(&op, rank_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, diag, identity, unit};

    const RANK_TOL: f64 = 1e-10;

    #[test]
    fn sum_rank_of_matrix_units() {
        let e12 = SubspaceBasis::new(2, vec![unit(2, 0, 1)]).unwrap();
        let e21 = SubspaceBasis::new(2, vec![unit(2, 1, 0)]).unwrap();
        assert_eq!(subspace_sum_rank(&e12, &e12, RANK_TOL).unwrap(), 1);
        assert_eq!(subspace_sum_rank(&e12, &e21, RANK_TOL).unwrap(), 2);
    }

    #[test]
    fn commutant_of_identity_and_distinct_diagonal() {
        for n in 1..=5 {
            assert_eq!(joint_commutant_dimension(&[identity(n)], RANK_TOL).unwrap(), n * n);
            let d = diag(&(1..=n).map(|k| c64(k as f64, 0.0)).collect::<Vec<_>>());
            assert_eq!(joint_commutant_dimension(std::slice::from_ref(&d), RANK_TOL).unwrap(), n);
            assert_eq!(joint_commutant_dimension(&[d, identity(n)], RANK_TOL).unwrap(), n);
        }
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let v1 = SubspaceBasis::new(2, vec![unit(2, 0, 1)]).unwrap();
        let v2 = SubspaceBasis::new(3, vec![unit(3, 0, 1)]).unwrap();
        assert!(subspace_sum_rank(&v1, &v2, RANK_TOL).is_err());
        assert!(SubspaceBasis::new(2, vec![unit(3, 0, 1)]).is_err());
    }
}
