//! Exact cohomology, characteristic numbers and bordism checks for
//! quasitoric manifolds and small covers over products of simplices.

pub mod bordism;
pub mod charmatrix;
pub mod cli;
pub mod error;
pub mod facering;
pub mod invariants;
pub mod linalg;
pub mod polytope;
mod serde_int;
pub mod stong;

pub use error::{Error, Result};
