use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("element is not a unit (valuation {valuation})")]
    NotAUnit { valuation: u32 },

    #[error("degree {degree} does not fit in truncation X^{truncation}")]
    TruncationOverflow { degree: usize, truncation: usize },

    #[error("element is indistinguishable from zero at precision p^{precision}")]
    IndistinguishableFromZero { precision: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("ideal does not divide: {0}")]
    NotDivisible(String),

    #[error("unsupported module shape: {0}")]
    UnsupportedShape(String),

    #[error("module has free rank {0} and is not torsion")]
    NotTorsion(u64),

    #[error("contexts differ: {0}")]
    ContextMismatch(String),

    #[error(transparent)]
    Validation(#[from] ValidationError),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("i/o error: {0}")]
    Io(String),
}

/// A violated invariant on input data. Every variant names one invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(i64),

    #[error("rank list is empty")]
    EmptyRanks,

    #[error("negative rank {rank} at level {level}")]
    NegativeRank { level: usize, rank: i64 },

    #[error("rank decreases at level {level}: {previous} -> {current}")]
    DecreasingRank {
        level: usize,
        previous: i64,
        current: i64,
    },

    #[error("rank jump {jump} at level {level} is not divisible by phi(p^{level}) = {totient}")]
    NonIntegralJump {
        level: usize,
        jump: i64,
        totient: u64,
    },

    #[error("negative rank jump e_{level} = {value}")]
    NegativeJump { level: usize, value: i64 },

    #[error("sha_finite has {found} entries but ranks has {expected}")]
    ShaLengthMismatch { expected: usize, found: usize },

    #[error("a_p = {0} but plus/minus analysis requires a_p = 0")]
    ApNonzero(i64),

    #[error("reduction type {0} is not good supersingular")]
    NotSupersingular(String),

    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),

    #[error("empty curve label")]
    EmptyLabel,

    #[error("level {level} exceeds profile length {len}")]
    LevelOutOfRange { level: usize, len: usize },

    #[error("{0}")]
    Other(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl ValidationError {
    /// Stable name of the violated invariant.
    pub fn kind(&self) -> &'static str {
        match self {
            ValidationError::InvalidPrime(_) => "InvalidPrime",
            ValidationError::EmptyRanks => "EmptyRanks",
            ValidationError::NegativeRank { .. } => "NegativeRank",
            ValidationError::DecreasingRank { .. } => "DecreasingRank",
            ValidationError::NonIntegralJump { .. } => "NonIntegralJump",
            ValidationError::NegativeJump { .. } => "NegativeJump",
            ValidationError::ShaLengthMismatch { .. } => "ShaLengthMismatch",
            ValidationError::ApNonzero(_) => "ApNonzero",
            ValidationError::NotSupersingular(_) => "NotSupersingular",
            ValidationError::SchemaVersion(_) => "SchemaVersion",
            ValidationError::EmptyLabel => "EmptyLabel",
            ValidationError::LevelOutOfRange { .. } => "LevelOutOfRange",
            ValidationError::Other(_) => "Other",
        }
    }
}

impl Error {
    /// True when the error is caused by the caller's input rather than by
    /// running out of precision or an internal failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidContext(_)
                | Error::TruncationOverflow { .. }
                | Error::UnsupportedShape(_)
                | Error::NotTorsion(_)
                | Error::ContextMismatch(_)
                | Error::Validation(_)
                | Error::Schema(_)
                | Error::Io(_)
        )
    }
}
