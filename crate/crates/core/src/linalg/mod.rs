//! Exact dense linear algebra over GF(p).
//!
//! Every routine is deterministic: pivots are chosen by a fixed scan order
//! and bases are returned in reduced echelon form, so downstream bases (and
//! the golden outputs built on them) are reproducible bit for bit.

mod field;
mod matrix;
pub mod poly;
mod subspace;

pub use field::PrimeField;
pub use matrix::{Echelon, Matrix};
pub use poly::{minimal_polynomial, Poly};
pub use subspace::Subspace;
