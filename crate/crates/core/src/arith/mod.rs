//! Exact arithmetic building blocks: fields, polynomials, rational functions,
//! finite fields and root finding.

pub mod field;
pub mod gf;
pub mod poly;
pub mod ratfunc;
pub mod roots;

pub use field::{ConstField, Field, Q};
pub use gf::{Fp, Fq};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::Qs;
