use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{block_labels, block_offsets, unit, zeros, CMatrix, SubspaceBasis};

/// Block sizes of the hollow-block space 𝒱: two halves, or three blocks each
/// smaller than n/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum BlockPattern {
    Halves { half: usize },
    Triple { p: usize, q: usize, r: usize },
}

impl BlockPattern {
    pub fn halves(n: usize) -> Result<Self> {
        Self::from_sizes(&[n / 2, n - n / 2])
    }

    pub fn triple(p: usize, q: usize, r: usize) -> Result<Self> {
        Self::from_sizes(&[p, q, r])
    }

    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let pattern = match *sizes {
            [a, b] if a == b && a > 0 => Self::Halves { half: a },
            [a, b] => return Err(Error::InvalidPattern(format!("two blocks must be equal halves, got ({a}, {b})"))),
            [p, q, r] => Self::Triple { p, q, r },
            _ => return Err(Error::InvalidPattern(format!("expected 2 or 3 block sizes, got {}", sizes.len()))),
        };
        pattern.validate()?;
        Ok(pattern)
    }

    pub fn validate(&self) -> Result<()> {
        if let Self::Triple { p, q, r } = *self {
            let n = p + q + r;
            for x in [p, q, r] {
                if x == 0 || 2 * x >= n {
                    return Err(Error::InvalidPattern(format!(
                        "block sizes ({p}, {q}, {r}) must be positive and below n/2"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn sizes(&self) -> Vec<usize> {
        match *self {
            Self::Halves { half } => vec![half, half],
            Self::Triple { p, q, r } => vec![p, q, r],
        }
    }

    pub fn n(&self) -> usize {
        self.sizes().iter().sum()
    }

    /// Block index of every row/column.
    pub fn labels(&self) -> Vec<usize> {
        block_labels(&self.sizes())
    }

    /// All valid patterns of size n: the halves pattern when n is even, and
    /// every ordered triple.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        if n >= 2 && n.is_multiple_of(2) {
            out.push(Self::Halves { half: n / 2 });
        }
        for p in 1..n {
            for q in 1..n - p {
                if let Ok(t) = Self::triple(p, q, n - p - q) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// The diagonal projectors: R = diag(I, 0) for halves, R₁ = diag(I_p, 0, 0)
    /// and R₂ = diag(0, I_q, 0) for triples.
    pub fn projectors(&self) -> Vec<CMatrix> {
        let sizes = self.sizes();
        let n = self.n();
        let offsets = block_offsets(&sizes);
        (0..sizes.len() - 1)
            .map(|b| {
                let mut m = zeros(n, n);
                for i in offsets[b]..offsets[b] + sizes[b] {
                    m[(i, i)] = crate::linalg::ONE;
                }
                m
            })
            .collect()
    }

    /// Index pairs (i, j) lying off the diagonal blocks.
    pub fn off_block_entries(&self) -> Vec<(usize, usize)> {
        let labels = self.labels();
        let n = labels.len();
        let mut out = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if labels[i] != labels[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Matrix units spanning 𝒱.
    pub fn hollow_block_basis(&self) -> SubspaceBasis {
        let n = self.n();
        let basis = self.off_block_entries().into_iter().map(|(i, j)| unit(n, i, j)).collect();
        SubspaceBasis { n, basis }
    }

    /// Whether every diagonal-block entry of `m` is exactly zero.
    pub fn contains(&self, m: &CMatrix) -> bool {
        let labels = self.labels();
        m.nrows() == labels.len()
            && m.ncols() == labels.len()
            && (0..labels.len())
                .all(|j| (0..labels.len()).all(|i| labels[i] != labels[j] || m[(i, j)] == crate::linalg::ZERO))
    }
}

impl std::fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Self::Halves { half } => write!(f, "({half}, {half})"),
            Self::Triple { p, q, r } => write!(f, "({p}, {q}, {r})"),
        }
    }
}
