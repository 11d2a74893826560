use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by the whole pipeline.
///
/// Relative tolerances are scaled by the quantity named in each field's
/// comment; the defaults target double precision at n ≤ 8.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    /// Minimal eigenvalue separation, relative to the largest eigenvalue modulus.
    pub gap_tol: f64,
    /// Diagonal magnitude accepted as zero, relative to ‖M‖_F.
    pub hollow_tol: f64,
    /// Hollow splitting residual, relative to max(1, ‖M‖_F).
    pub split_tol: f64,
    /// Similarity certificate residual bound.
    pub cert_tol: f64,
    /// Final reconstruction residual, relative to max(1, ‖target‖_F).
    pub end_tol: f64,
    /// Singular values below this fraction of the largest are treated as zero.
    pub rank_tol: f64,
    /// Sylvester backward error bound.
    pub solve_tol: f64,
    /// Eigenvalue clustering radius, relative to max |λ|.
    pub cluster_tol: f64,
    /// Trace magnitude counted as nonzero, relative to ‖image‖_F.
    pub trace_tol: f64,
    /// Polynomial classification tolerance.
    pub classify_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gap_tol: 1e-8,
            hollow_tol: 1e-10,
            split_tol: 1e-9,
            cert_tol: 1e-8,
            end_tol: 1e-6,
            rank_tol: 1e-10,
            solve_tol: 1e-10,
            cluster_tol: 1e-7,
            trace_tol: 1e-8,
            classify_tol: 1e-8,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 10] = [
        "gap", "hollow", "split", "cert", "end", "rank", "solve", "cluster", "trace", "classify",
    ];

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "gap" => self.gap_tol,
            "hollow" => self.hollow_tol,
            "split" => self.split_tol,
            "cert" => self.cert_tol,
            "end" => self.end_tol,
            "rank" => self.rank_tol,
            "solve" => self.solve_tol,
            "cluster" => self.cluster_tol,
            "trace" => self.trace_tol,
            "classify" => self.classify_tol,
            _ => return None,
        })
    }

    /// Overrides one tolerance by its short name (`gap`, `hollow`, ...).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance {name} must be positive, got {value}"
            )));
        }
        let slot = match name {
            "gap" => &mut self.gap_tol,
            "hollow" => &mut self.hollow_tol,
            "split" => &mut self.split_tol,
            "cert" => &mut self.cert_tol,
            "end" => &mut self.end_tol,
            "rank" => &mut self.rank_tol,
            "solve" => &mut self.solve_tol,
            "cluster" => &mut self.cluster_tol,
            "trace" => &mut self.trace_tol,
            "classify" => &mut self.classify_tol,
            _ => {
                return Err(Error::InvalidParameter(format!("unknown tolerance {name}")));
            }
        };
        *slot = value;
        Ok(())
    }

    /// Elementwise minimum.
    pub fn stricter(&self, other: &Tolerances) -> Tolerances {
        let mut out = *self;
        for name in Self::NAMES {
            let v = self.get(name).unwrap().min(other.get(name).unwrap());
            if v.is_finite() && v > 0.0 {
                out.set(name, v).unwrap();
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        for name in Self::NAMES {
            let v = self.get(name).unwrap_or(f64::NAN);
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_rejects_nonpositive_and_unknown() {
        let mut t = Tolerances::default();
        assert!(t.set("gap", 0.0).is_err());
        assert!(t.set("bogus", 1.0).is_err());
        t.set("end", 1e-4).unwrap();
        let s = t.stricter(&Tolerances::default());
        assert_eq!(s.end_tol, Tolerances::default().end_tol);
        assert_eq!(t.end_tol, 1e-4);
        assert!(t.validate().is_ok());
    }
}
