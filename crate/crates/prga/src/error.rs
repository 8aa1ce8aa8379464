//! Error types shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when constructing dictionaries, running the
/// greedy iterations, or evaluating the closed-form floors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate {index} is not finite")]
    NonFiniteCoordinate { index: usize },

    #[error("vector must have at least one coordinate")]
    EmptyVector,

    #[error("dictionary must contain at least one atom")]
    EmptyDictionary,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("atom {index} has norm {norm}, expected 1 within 1e-12")]
    NotUnitNorm { index: usize, norm: f64 },

    #[error("atom index {index} out of range for {len} stored atoms")]
    AtomIndexOutOfRange { index: usize, len: usize },

    #[error("coherence mu = {mu} must lie in [0, 1)")]
    InvalidCoherence { mu: f64 },

    #[error("mixture weight b = {b} must lie in (0, 1/2)")]
    InvalidMixture { b: f64 },

    #[error("ambient dimension n = {n} must be at least 2")]
    AmbientDimTooSmall { n: usize },

    #[error("step-size exponent alpha = {alpha} must be finite and positive")]
    InvalidAlpha { alpha: f64 },

    #[error("iteration count must be at least 1")]
    InvalidIterations,

    #[error(
        "infinite product diverges to zero for alpha = {alpha}; \
         alpha must exceed 1 for bound computation"
    )]
    DivergedProduct { alpha: f64 },

    #[error("tolerance {tol} must lie in (0, 1e-3]")]
    InvalidTolerance { tol: f64 },

    #[error(
        "product truncation for alpha = {alpha} needs {needed} terms, \
         exceeding the cap of {cap}"
    )]
    TruncationCapExceeded { alpha: f64, needed: u64, cap: u64 },

    #[error("infinite product underflows for alpha = {alpha}; alpha is too close to 1")]
    ProductUnderflow { alpha: f64 },

    #[error("vector lies outside the atom span (relative error {relative_error:.3e})")]
    OutOfSpan { relative_error: f64 },

    #[error(
        "coherence condition violated: mu_S = {mu_s} must be below 1/(s-1) = {limit} \
         for s = {s} atoms"
    )]
    CoherenceViolation { s: usize, mu_s: f64, limit: f64 },

    #[error("Gram system is numerically singular")]
    SingularGram,

    #[error("operation requires a two-atom dictionary, got {len} atoms")]
    NotTwoAtoms { len: usize },

    #[error("mutual coherence requires at least two atoms, got {got}")]
    TooFewAtoms { got: usize },

    #[error("witness vector requires non-negative pair coherence, got {ip}")]
    NegativePairCoherence { ip: f64 },

    #[error("atomic norm argument {value} must be finite and non-negative")]
    InvalidAtomicNorm { value: f64 },

    #[error("sparsity level s must be at least 1")]
    InvalidSparsity,

    #[error("grid is empty or ill-formed: {reason}")]
    InvalidGrid { reason: String },

    #[error("sweep config has mode {got}, expected {expected}")]
    SweepModeMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
