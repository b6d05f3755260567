use thiserror::Error;

use crate::scalar::RingSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },

    #[error("element of Z_(2) with even denominator: {0}")]
    EvenDenominator(String),

    #[error("coefficient {value} does not lie in {target}")]
    NotIntegral { value: String, target: String },

    #[error("no ring map from {from} to {to}")]
    NoRingMap { from: RingSpec, to: RingSpec },

    #[error("v^{exponent} is not an element of {ring}")]
    VExponentOutOfRing { exponent: i32, ring: RingSpec },

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("truncation mismatch: {left} vs {right}")]
    TruncMismatch { left: u32, right: u32 },

    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },

    #[error("series is not divisible: {0}")]
    NonDivisible(String),

    #[error("substitution argument {index} has a nonzero constant term")]
    NonzeroConstantTerm { index: usize },

    #[error("formal group law has no logarithm available")]
    LogUnavailable,

    #[error("1/2 is not available in {0}")]
    HalfUnavailable(RingSpec),

    #[error("correspondence is not idempotent")]
    NotIdempotent,

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("objects belong to different quadric theories")]
    TheoryMismatch,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}
