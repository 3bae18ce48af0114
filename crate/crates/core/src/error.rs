//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("values belong to different field contexts")]
    MixedContexts,

    #[error("{0} is not invertible")]
    NonUnit(String),

    #[error("polynomial is not monic: {0}")]
    NotMonic(String),

    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("requested precision {requested} exceeds the series cap {cap}")]
    PrecisionCap { requested: i64, cap: i64 },

    #[error("linear system failure: {0}")]
    InconsistentSystem(String),

    #[error("isogeny condition u*phi_T = phi'_T*u violated")]
    IsogenyMismatch,

    #[error("descent failure: {0}")]
    DescentFailed(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("enumeration domain too large: {0}")]
    Oversize(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
