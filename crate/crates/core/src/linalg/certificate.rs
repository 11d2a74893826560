use serde::{Deserialize, Serialize};

use super::{condition_estimate, frobenius, identity, inverse, json, CMatrix};
use crate::error::{Error, Result};

/// Evidence that `to = t·from·t_inv` with `t_inv` an explicitly computed
/// inverse of `t`. All residuals are stored so a third party can recheck
/// them from the matrices alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SimilarityCertificate {
    #[serde(with = "json::matrix")]
    pub t: CMatrix,
    #[serde(with = "json::matrix")]
    pub t_inv: CMatrix,
    #[serde(with = "json::matrix")]
    pub from: CMatrix,
    #[serde(with = "json::matrix")]
    pub to: CMatrix,
    /// ‖T·T⁻¹ − I‖_F
    pub residual_inverse: f64,
    /// ‖T·from·T⁻¹ − to‖_F
    pub residual_map: f64,
    /// ‖T‖_F·‖T⁻¹‖_F
    pub condition_estimate: f64,
}

/// Residuals recomputed from a certificate's matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateResiduals {
    pub residual_inverse: f64,
    pub residual_map: f64,
    pub condition_estimate: f64,
}

impl CertificateResiduals {
    pub fn of(t: &CMatrix, t_inv: &CMatrix, from: &CMatrix, to: &CMatrix) -> Self {
        let n = t.nrows();
        Self {
            residual_inverse: frobenius(&(t * t_inv - identity(n))),
            residual_map: frobenius(&(t * from * t_inv - to)),
            condition_estimate: condition_estimate(t, t_inv),
        }
    }

    /// Checks both bounds; the error names the first that fails.
    pub fn check(&self, from_norm: f64, cert_tol: f64) -> Result<()> {
        if !(self.residual_inverse <= cert_tol) {
            return Err(Error::CertificateFailure {
                what: "inverse residual".into(),
                value: self.residual_inverse,
                bound: cert_tol,
            });
        }
        let bound = cert_tol * self.condition_estimate * from_norm;
        if !(self.residual_map <= bound) {
            return Err(Error::CertificateFailure {
                what: "similarity residual".into(),
                value: self.residual_map,
                bound,
            });
        }
        Ok(())
    }
}

impl SimilarityCertificate {
    pub fn new(t: CMatrix, t_inv: CMatrix, from: CMatrix, to: CMatrix) -> Result<Self> {
        let n = from.nrows();
        for (name, m) in [("T", &t), ("T⁻¹", &t_inv), ("source", &from), ("target", &to)] {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "certificate {name} is {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let r = CertificateResiduals::of(&t, &t_inv, &from, &to);
        Ok(Self {
            t,
            t_inv,
            from,
            to,
            residual_inverse: r.residual_inverse,
            residual_map: r.residual_map,
            condition_estimate: r.condition_estimate,
        })
    }

    /// Certificate for `to = t·from·t⁻¹`, inverting `t` explicitly.
    pub fn from_transform(t: CMatrix, from: CMatrix, to: CMatrix) -> Result<Self> {
        let t_inv = inverse(&t)?;
        Self::new(t, t_inv, from, to)
    }

    pub fn identity(x: &CMatrix) -> Self {
        let n = x.nrows();
        Self::new(identity(n), identity(n), x.clone(), x.clone())
            .expect("identity certificate has consistent sizes")
    }

    pub fn residuals(&self) -> CertificateResiduals {
        CertificateResiduals {
            residual_inverse: self.residual_inverse,
            residual_map: self.residual_map,
            condition_estimate: self.condition_estimate,
        }
    }

    /// Checks the stored residuals against `cert_tol`.
    pub fn check(&self, cert_tol: f64) -> Result<()> {
        self.residuals().check(frobenius(&self.from), cert_tol)
    }

    /// Recomputes the residuals from the stored matrices and checks them.
    pub fn verify(&self, cert_tol: f64) -> Result<()> {
        CertificateResiduals::of(&self.t, &self.t_inv, &self.from, &self.to)
            .check(frobenius(&self.from), cert_tol)
    }

    /// The reverse similarity `from = t_inv·to·t`.
    pub fn reversed(&self) -> Result<Self> {
        Self::new(self.t_inv.clone(), self.t.clone(), self.to.clone(), self.from.clone())
    }

    /// Composes `self: X → Y` with `next: Y → Z` into `X → Z`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        Self::new(&next.t * &self.t, &self.t_inv * &next.t_inv, self.from.clone(), next.to.clone())
    }
}
