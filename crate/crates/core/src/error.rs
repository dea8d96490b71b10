use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("N must be odd for the Chu sequence (got N = {0})")]
    EvenChuLength(usize),

    #[error("sequence length must be positive")]
    EmptyLength,

    #[error("Wiener sequence of odd length {n} requires gcd(s, N) = 1 (got s = {s})")]
    WienerOddGcd { n: usize, s: i64 },

    #[error("Wiener sequence of even length {n} requires gcd(s, 2N) = 1 (got s = {s})")]
    WienerEvenGcd { n: usize, s: i64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} is not unimodular: |x[{index}]| = {modulus}")]
    NotUnimodular {
        what: &'static str,
        index: usize,
        modulus: f64,
    },

    #[error("sigma is not a permutation of 0..{0}")]
    NotPermutation(usize),

    #[error("generating sequence is not CAZAC (amplitude deviation {amplitude:e}, autocorrelation {autocorrelation:e})")]
    NotCazac {
        amplitude: f64,
        autocorrelation: f64,
    },

    #[error("first entry is zero; cannot normalize")]
    ZeroFirstEntry,

    #[error("entry {0} is zero")]
    ZeroEntry(usize),

    #[error("window has zero norm")]
    ZeroWindow,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no closed-form ambiguity function for family `{0}`")]
    UnknownFamily(String),

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error(
        "invalid factorization N = a*b*N' with N = {n}, a = {a}, b = {b}, N' = {n_prime}: {reason}"
    )]
    InvalidFactorization {
        n: usize,
        a: usize,
        b: usize,
        n_prime: usize,
        reason: &'static str,
    },

    #[error("element set is not a subgroup of Z_{n} x Z_{n}: {reason}")]
    NotSubgroup { n: usize, reason: String },

    #[error("system is not a tight frame; refusing tight reconstruction")]
    NotTight,

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
