//! Exact computation of reductions, depths, resultant functions and minimal
//! resultant loci for rational maps on the Berkovich projective line.

pub mod arith;
pub mod berktree;
pub mod error;
pub mod harness;
pub mod hypres;
pub mod par;
pub mod ratmap;
pub mod redtheory;
pub mod valfield;

pub use error::{Error, Result};
