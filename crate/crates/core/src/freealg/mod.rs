//! Noncommutative polynomials over ℂ and their evaluation on matrices.

mod classify;
mod parser;
mod polynomial;

pub use classify::{classify, classify_with, ClassifyOptions, PolyClass, Verdict};
pub use parser::parse;
pub use polynomial::{NcPolynomial, Word};
