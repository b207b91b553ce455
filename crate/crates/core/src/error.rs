use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched field configurations: {0}")]
    ConfigMismatch(String),
    #[error("expected a unit (valuation 0), got valuation {0}")]
    NotAUnit(String),
    #[error("radius exponent {0} needs a ramification index divisible by its denominator; enlarge e")]
    EnlargeE(String),
    #[error("irrational direction: residue factor {0} has no root in the residue field")]
    IrrationalDirection(String),
    #[error("residue factorization exceeds the trial-division budget")]
    FactorizationBudget,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate map: resultant vanishes")]
    DegenerateMap,
    #[error("map has degree 0")]
    DegreeZero,
    #[error("degree cap exceeded: {degree} > {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("target equals the base point")]
    SamePoint,
    #[error("iteration cap reached: {0}")]
    IterationCap(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
