use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("modulus has degree {got}, expected a monic polynomial of degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("modulus must be monic")]
    NotMonic,
    #[error("cannot parse field spec {input:?}: {reason}")]
    FieldSpecParse { input: String, reason: String },
    #[error("cyclotomic integers of different root orders ({left} vs {right})")]
    MixedOrder { left: u32, right: u32 },
    #[error("cyclotomic integer is not a rational integer")]
    NotRational,
    #[error("root index {k} out of range for order {p}")]
    RootIndex { p: u32, k: u32 },
    #[error("permutation has {got} images, field has {expected} elements")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("operation requires q > 2 (got q = {q})")]
    FieldTooSmall { q: u64 },
    #[error("{what}: {got} exceeds the supported limit {limit}")]
    RangeExceeded { what: &'static str, limit: u64, got: u64 },
    #[error("non-integer result: {0}")]
    NonIntegerResult(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
