//! Valued fields with exact valuations and residues.
//!
//! Two backends are provided:
//!
//! * [`MixedScalar`]: `Q[pi]/(pi^e - p)`, a totally ramified extension of `Q`
//!   with the `p`-adic valuation. Residue field `F_p`.
//! * [`LaurentScalar`]: `Q(s)(u)` with `u^e = t` and the `t`-adic valuation.
//!   Residue field `Q(s)`, so `s` is transcendental over the prime field.
//!
//! Valuations are normalized so that `v(p) = 1`, respectively `v(t) = 1`.

use std::fmt;

use serde::Serialize;

use crate::arith::{Field, Poly, Q};
use crate::error::{Error, Result};

mod laurent;
mod literal;
mod mixed;
mod residue;

pub use laurent::{LaurentConfig, LaurentScalar};
pub use literal::{parse_expr, parse_scalar, Expr};
pub use mixed::{MixedConfig, MixedScalar};
pub use residue::{factor_binary, ClosedPoint, ResidueField, ResiduePoint};

/// Valuation exponent; `Infinite` is the valuation of zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ValExp {
    Finite(Q),
    Infinite,
}

impl ValExp {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            ValExp::Finite(q) => Some(q),
            ValExp::Infinite => None,
        }
    }
}

impl fmt::Display for ValExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValExp::Finite(q) => write!(f, "{q}"),
            ValExp::Infinite => f.write_str("inf"),
        }
    }
}

/// Backend descriptor used in reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldDescriptor {
    pub backend: &'static str,
    pub p: Option<u64>,
    pub e: u32,
}

/// A field with a discrete valuation whose residues and uniformizer powers
/// are exactly computable.
pub trait ValuedField: Field {
    type Residue: ResidueField;
    type Config: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn config(&self) -> Self::Config;
    fn from_q(cfg: &Self::Config, q: &Q) -> Self;
    fn valuation(&self) -> ValExp;
    /// Image in the residue field of an element of valuation 0.
    fn reduce_unit(&self) -> Result<Self::Residue>;
    /// A fixed lift of a residue element.
    fn lift(cfg: &Self::Config, r: &Self::Residue) -> Self;
    /// The canonical element of valuation exactly `q` (a power of the
    /// uniformizer root); fails when `q * e` is not an integer.
    fn uniformizer_pow(cfg: &Self::Config, q: &Q) -> Result<Self>;
    fn ramification(cfg: &Self::Config) -> u32;
    /// The same config with ramification index multiplied by `k`.
    fn ramify_config(cfg: &Self::Config, k: u32) -> Self::Config;
    /// Embedding into the field with ramification index `e * k`.
    fn ramify(&self, k: u32) -> Self;
    /// Named constants accepted by the literal syntax (`pi`, `t`, `s`).
    fn parse_atom(cfg: &Self::Config, name: &str) -> Option<Self>;
    fn descriptor(cfg: &Self::Config) -> FieldDescriptor;
    /// Residue-field element from an integer.
    fn residue_int(cfg: &Self::Config, n: i64) -> Self::Residue;

    /// Reduction of an element of nonnegative valuation.
    fn reduce(&self) -> Result<Self::Residue> {
        match self.valuation() {
            ValExp::Infinite => Ok(Self::residue_int(&self.config(), 0)),
            ValExp::Finite(q) if q > Q::from_integer(0.into()) => Ok(Self::residue_int(&self.config(), 0)),
            ValExp::Finite(q) if q == Q::from_integer(0.into()) => self.reduce_unit(),
            ValExp::Finite(q) => Err(Error::NotAUnit(q.to_string())),
        }
    }
}

/// Checks that a rational exponent is representable with ramification `e`.
pub fn check_exponent(q: &Q, e: u32) -> Result<()> {
    let scaled = q * Q::from_integer(e.into());
    if scaled.is_integer() {
        Ok(())
    } else {
        Err(Error::EnlargeE(q.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic between scalars of possibly different configs.
pub fn scalar_arith<K: ValuedField>(op: ArithOp, x: &K, y: &K) -> Result<K> {
    if x.config() != y.config() {
        return Err(Error::ConfigMismatch(format!("{:?} vs {:?}", x.config(), y.config())));
    }
    Ok(match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Div => x.div(y).ok_or(Error::DivisionByZero)?,
    })
}

/// Complete factorization of a residue polynomial into closed points.
pub fn residue_factor<R: ResidueField>(f: &Poly<R>) -> Result<Vec<(Poly<R>, usize)>> {
    if f.is_zero() {
        return Err(Error::Precondition("cannot factor the zero polynomial".into()));
    }
    R::factor(f)
}
