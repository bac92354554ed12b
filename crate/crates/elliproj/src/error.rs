//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
///
/// Variants fall into two broad groups which the CLI maps to distinct exit
/// codes: invalid input or configuration (rejected before any numerical work
/// starts) and numerical/compute failures (detected while working).
#[derive(Debug, Error)]
pub enum Error {
    // ---- invalid input / configuration -------------------------------------
    /// A vector had the wrong length, or two inputs disagree on dimension.
    #[error("DimensionMismatch: expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation that needs at least one observation received none.
    #[error("EmptySample: operation requires a nonempty sample")]
    EmptySample,

    /// A direction vector was identically zero.
    #[error("ZeroDirection: direction vectors must be nonzero")]
    ZeroDirection,

    /// Class labels other than 0 or 1 were supplied.
    #[error("BadLabels: {0}")]
    BadLabels(String),

    /// The train/weighting split is infeasible (e.g. fewer reference points
    /// than neighbors).
    #[error("BadSplit: {0}")]
    BadSplit(String),

    /// A direction index outside the fitted classifier's range.
    #[error("UnknownDirection: index {0} out of range for {1} directions")]
    UnknownDirection(usize, usize),

    /// A configuration value failed validation.
    #[error("BadConfig: {0}")]
    BadConfig(String),

    /// A CSV cell or row could not be parsed as numeric data.
    #[error("MalformedCsv: {0}")]
    MalformedCsv(String),

    /// Underlying I/O failure while reading or writing files.
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),

    /// CSV-level read/write failure (quoting, record shape, ...).
    #[error("Csv: {0}")]
    Csv(#[from] csv::Error),

    /// JSON (de)serialization failure.
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),

    // ---- numerical / compute failures --------------------------------------
    /// The supplied basis vectors are linearly dependent.
    #[error("DependentBasis: basis vectors are linearly dependent (rank {rank} < {dim})")]
    DependentBasis { rank: usize, dim: usize },

    /// No nonzero witness exists: the set is a uniqueness set.
    #[error("NoWitness: the direction set is an sm-uniqueness set; only A = 0 annihilates it")]
    NoWitness,

    /// A scale matrix that must be positive semi-definite is not.
    #[error("NotPsd: matrix has eigenvalue {min_eig:.6e} below the PSD tolerance")]
    NotPsd { min_eig: f64 },

    /// A scale matrix that must be strictly positive definite is not.
    #[error("NotPd: matrix is not strictly positive definite (min eigenvalue {min_eig:.6e})")]
    NotPd { min_eig: f64 },

    /// The witness matrix supplied to `choose_epsilon` is zero.
    #[error("ZeroWitness: perturbation matrix is zero")]
    ZeroWitness,

    /// Closed-form characteristic function requested for a generator that has
    /// no elementary closed form.
    #[error("UnsupportedGenerator: {0}")]
    UnsupportedGenerator(String),
}

impl Error {
    /// True when the error stems from malformed input or configuration rather
    /// than a numerical failure mid-computation. The CLI uses this to pick
    /// between its "bad input" and "compute error" exit codes.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::EmptySample
                | Error::ZeroDirection
                | Error::BadLabels(_)
                | Error::BadSplit(_)
                | Error::UnknownDirection(..)
                | Error::BadConfig(_)
                | Error::MalformedCsv(_)
                | Error::Io(_)
                | Error::Csv(_)
                | Error::Json(_)
        )
    }
}
