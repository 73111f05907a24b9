use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {0} outside the supported range 3 <= p < 2^20")]
    PrimeOutOfRange(u64),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("mixed primes in one operation ({0} vs {1})")]
    PrimeMismatch(u64, u64),

    #[error("element is not integral: {0}")]
    NonIntegral(String),

    #[error("denominator divisible by p = {0}")]
    DenominatorDivisibleByP(u64),

    #[error("element is not invertible modulo p^{0}")]
    NotInvertible(u32),

    #[error("relative weight undefined: n_c + n_(p-c) varies at c = {0:?}")]
    NonConstantWeight(Vec<u64>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("insufficient series degree: need {needed}, have {have}")]
    InsufficientDegree { needed: usize, have: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("oracle ceiling {ceiling} exceeded by p = {p}")]
    CeilingExceeded { p: u64, ceiling: u64 },

    #[error("siegel bound unreachable: best norm {best} exceeds bound {bound}")]
    SiegelBoundUnreachable { best: String, bound: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
