use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants fall into two families: violated hypotheses of the underlying
/// theorems (the caller asked for something outside a theorem's domain) and
/// genuine internal failures. [`Error::is_hypothesis`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("k exceeds p: {0}")]
    KExceedsP(String),

    #[error("too large: {what} needs {size} entries, limit is {limit}")]
    TooLarge { what: String, size: u128, limit: u128 },

    #[error("inconsistent sequence: {0}")]
    InconsistentSequence(String),

    #[error("denominator does not split over the supplied roots")]
    DenominatorDoesNotSplit,

    #[error("congruence unsupported: p = {p} is not congruent to 1 or -1 mod {d}")]
    CongruenceUnsupported { p: u64, d: u64 },

    #[error("singular system")]
    SingularSystem,

    #[error("support exceeds p: {0}")]
    SupportExceedsP(String),

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True when the error means "outside the domain of the theorem or
    /// operation", as opposed to a bug or an arithmetic failure.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::ParityViolation(_)
                | Error::KExceedsP(_)
                | Error::TooLarge { .. }
                | Error::DenominatorDoesNotSplit
                | Error::CongruenceUnsupported { .. }
                | Error::SupportExceedsP(_)
                | Error::CharacteristicMismatch(..)
                | Error::Hypothesis(_)
                | Error::InvalidInput(_)
                | Error::Parse { .. }
        )
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
