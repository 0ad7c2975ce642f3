use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: factor 1 - q^0 in a denominator")]
    Pole,
    #[error("half-integer power of q requested ({0}/2)")]
    HalfIntegerPower(i64),
    #[error("denominator is not a product of cyclotomic polynomials: {0}")]
    NonCyclotomic(String),
    #[error("frozen vertex {0}")]
    FrozenVertex(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("sign coherence violated at vertex {vertex}: {row:?}")]
    SignCoherence { vertex: usize, row: Vec<i64> },
    #[error("pentagon hypothesis violated: pairing is {0}/2, expected 1")]
    PentagonHypothesis(i64),
    #[error("exponent outside the nonnegative cone: {0:?}")]
    ConeViolation(Vec<i64>),
    #[error("not a permutation: {0}")]
    BadPermutation(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("non-integer commutation exponent {0}")]
    NonIntegerExponent(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("range propagation failed: {0}")]
    Propagation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
