//! Homological invariants of bound quiver algebras over prime fields.
//!
//! Paths compose left to right: `a*b` means "first `a`, then `b`". Modules are
//! left modules given as quiver representations; the projective `P(i)` has as
//! basis the irreducible paths starting at `i`.

pub mod algebra;
pub mod bounds;
pub mod decomp;
pub mod error;
pub mod hom;
pub mod homology;
pub mod igusa_todorov;
pub mod layers;
pub mod linalg;
pub mod quiver;
pub mod random;
pub mod rep;
pub mod samples;
pub mod selftest;

pub use algebra::BoundAlgebra;
pub use error::{Error, Result};
pub use quiver::{LinComb, Path, Quiver};
pub use rep::{ModuleMap, Representation, Submodule};
