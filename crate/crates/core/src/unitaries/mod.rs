//! The explicit unitary machinery: rank-one projectors R_q, the rotations
//! carrying P₂ onto them, the decoupling unitary U whose conjugate pattern
//! projectors have only diagonal matrices in their joint commutant, and the
//! resulting split of hollow matrices as C₁ + U·C₂·U*.

mod decoupling;
mod params;
mod pattern;
mod projector;
mod split;

pub use decoupling::{build_decoupling_unitary, DecouplingLayout};
pub use params::{assign_parameters, ParameterAssignment};
pub use pattern::BlockPattern;
pub use projector::{
    conjugating_rotation, corner_projectors, corner_targets, corner_unitary, make_projector, p2, ProjectorPair,
    ProjectorSign,
};
pub use split::{split_hollow, HollowSplit, HollowSplitter};
