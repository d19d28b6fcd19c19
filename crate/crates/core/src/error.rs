use num_bigint::BigInt;
use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("basis mismatch: {0} vs {1}")]
    BasisMismatch(String, String),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid jet: {0}")]
    InvalidJet(String),
    #[error("first-order invariant mismatch: {0}")]
    MuMismatch(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("tuples are not affine admissible at order {0}")]
    NotAdmissible(u32),
    #[error("hypothesis ({item}) violated: {detail}")]
    Hypothesis { item: u8, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("non-primitive lattice vector ({0}, {1})")]
    NonPrimitive(BigInt, BigInt),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
