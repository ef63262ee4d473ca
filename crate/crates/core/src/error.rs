use thiserror::Error;

use crate::cartan::DatumViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Borcherds-Cartan datum: {}", render_violations(.0))]
    Validation(Vec<DatumViolation>),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("quantum binomial [{m} choose {k}] out of range")]
    OutOfRange { m: i64, k: i64 },
    #[error("unsupported m = {0}")]
    UnsupportedM(i64),
    #[error("reduction budget exceeded: {0}")]
    ReductionBudgetExceeded(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid exponent r = {r} for m = {m}")]
    InvalidExponent { m: i64, r: i64 },
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("gamma is not an (m-1)-th root of unity: {0}")]
    GammaNotRoot(String),
    #[error("gating condition violated at index {0}")]
    GatingViolation(usize),
    #[error("truncation too tight: {0}")]
    TruncationTooTight(String),
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

fn render_violations(v: &[DatumViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
