//! Canonical forms feeding the decomposition.

mod blockdiag;
mod cluster;
mod hollow;
mod partition;

pub use blockdiag::block_diagonalize_by_cluster;
pub(crate) use blockdiag::block_diagonalize_grouped;
pub use cluster::{cluster_eigenvalues, Cluster};
pub use hollow::{zero_diagonal_similarity, HollowForm};
pub use partition::{partition_spectrum, PartitionCase, SpectralPartition};
