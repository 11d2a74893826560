//! Constructive Waring-type decompositions in M_n(ℂ).
//!
//! Given a noncommutative polynomial f that is neither an identity nor
//! central on n×n matrices, every trace-zero matrix A is written as
//! f(t₁) − f(t₂) + f(t₃) − f(t₄) for explicit argument tuples tᵢ, and every
//! similarity used along the way ships a checkable certificate.
//!
//! The pipeline, bottom up:
//!
//! - [`freealg`]: parse, print, evaluate, and classify polynomials.
//! - [`linalg`]: Schur forms, Sylvester solves, ranks, commutants, certificates.
//! - [`canon`]: eigenvalue clustering, block diagonalization, the half-size
//!   spectral partition, and the zero-diagonal similarity.
//! - [`unitaries`]: the projector family, the decoupling unitary, and the
//!   splitting of hollow matrices across two block patterns.
//! - [`waring`]: the four-, two-, and five-term pipelines.
//! - [`certificate`]: the JSON certificate document and its independent verifier.
//! - [`cli`]: the `waring` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod canon;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod freealg;
pub mod linalg;
pub mod sampling;
pub mod tolerances;
pub mod unitaries;
pub mod waring;

pub use error::{Error, Result};
pub use freealg::{parse, NcPolynomial, Verdict};
pub use linalg::{CMatrix, SimilarityCertificate};
pub use tolerances::Tolerances;
pub use waring::{Mode, WaringCertificate};
