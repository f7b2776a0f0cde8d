use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("modulus {q} is not a multiple of 24")]
    NotMultipleOf24 { q: u64 },

    #[error("density precondition violated: need mean >= {required}, measured {measured_a} and {measured_b}")]
    DensityTooLow {
        required: f64,
        measured_a: f64,
        measured_b: f64,
    },

    #[error("norm precondition violated: ||a||_inf = {linf}, ||a||_1 = {l1} (need <= 1 and <= 9)")]
    NormTooLarge { linf: f64, l1: f64 },

    #[error("negative entry at index {index}")]
    NegativeEntry { index: usize },

    #[error("search budget exceeded for q = {q}: {limit}")]
    BudgetExceeded { q: u64, limit: String },

    #[error("interval shorter than modulus: eta*N = {interval_len}, Q = {q} (some residue class is empty)")]
    IntervalShorterThanModulus { interval_len: u64, q: u64 },

    #[error("modulus too large for bitmask representation: q = {q} > 64")]
    ModulusTooLarge { q: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
