use thiserror::Error;

/// Errors raised by field construction, character-sum reduction and the
/// counting formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {q} exceeds the configured cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("no primitive polynomial of degree {r} over F_{p}")]
    NoPrimitivePolynomial { p: u32, r: u32 },
    #[error("modulus {0:?} is not a primitive polynomial")]
    NotPrimitive(Vec<u32>),
    #[error("{k} does not divide q - 1 = {q_minus_one}")]
    NotDivisor { k: u32, q_minus_one: u32 },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: u32, bound: u32 },
    #[error("(q, k) = ({q}, {k}) does not satisfy q = k + 1 (mod 2k) with k even")]
    InvalidParameters { q: u64, k: u32 },
    #[error("cyclotomic value is not a rational integer")]
    NotRational,
    #[error("non-integral result: {0}")]
    NotIntegral(String),
    #[error("{q} has no decomposition x^2 + y^2 with x = 1 (mod 4) under the {rule} rule")]
    NoDecomposition { q: u64, rule: &'static str },
    #[error("{q} has several admissible x under the {rule} rule: {candidates:?}")]
    NonUnique {
        q: u64,
        rule: &'static str,
        candidates: Vec<i64>,
    },
    #[error("transitive subtournaments of order {0} are not supported (use 3 or 4)")]
    UnsupportedOrder(usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("residual modes disagree: full = {full}, orbits = {orbits}")]
    ModeDisagreement { full: String, orbits: String },
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
