//! Matrix JSON format: `{"n": int, "entries": [[re, im], ...]}`, row-major,
//! `n²` entries. The `serde(with = ...)` helpers below map [`CMatrix`] and
//! collections of it onto that format.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        let n = m.nrows();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = m[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        Self { n, entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.n;
        if self.entries.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "matrix with n = {n} needs {} entries, found {}",
                n * n,
                self.entries.len()
            )));
        }
        if self.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(CMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.entries[i * n + j];
            Complex64::new(re, im)
        }))
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let raw: MatrixJson = serde_json::from_str(text)?;
    raw.to_matrix()
}

pub fn matrix_to_string(m: &CMatrix) -> Result<String> {
    crate::certificate::to_json_string(&MatrixJson::from_matrix(m))
}

pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CMatrix, D::Error> {
        MatrixJson::deserialize(d)?.to_matrix().map_err(D::Error::custom)
    }
}

pub mod matrices {
    use super::*;

    pub fn serialize<S: Serializer>(ms: &[CMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
        ms.iter().map(MatrixJson::from_matrix).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<CMatrix>, D::Error> {
        Vec::<MatrixJson>::deserialize(d)?
            .iter()
            .map(|m| m.to_matrix().map_err(D::Error::custom))
            .collect()
    }
}

pub mod tuples {
    use super::*;

    pub fn serialize<S: Serializer>(ts: &[Vec<CMatrix>], s: S) -> std::result::Result<S::Ok, S::Error> {
        ts.iter()
            .map(|t| t.iter().map(MatrixJson::from_matrix).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<CMatrix>>, D::Error> {
        Vec::<Vec<MatrixJson>>::deserialize(d)?
            .iter()
            .map(|t| t.iter().map(|m| m.to_matrix().map_err(D::Error::custom)).collect())
            .collect()
    }
}

pub mod complex_list {
    use super::*;

    pub fn serialize<S: Serializer>(zs: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
        zs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<[f64; 2]>::deserialize(d)?
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn row_major_layout() {
        let m = CMatrix::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(2.0, -1.0), c64(3.0, 0.5), c64(4.0, 0.0)]);
        let j = MatrixJson::from_matrix(&m);
        assert_eq!(j.entries[1], [2.0, -1.0]);
        assert_eq!(j.entries[2], [3.0, 0.5]);
        assert_eq!(j.to_matrix().unwrap(), m);
    }

    #[test]
    fn wrong_entry_count_rejected() {
        assert!(parse_matrix(r#"{"n": 2, "entries": [[1,0],[0,0],[0,0]]}"#).is_err());
        assert!(parse_matrix(r#"{"n": 1, "entries": [[1,0]]}"#).is_ok());
    }
}
