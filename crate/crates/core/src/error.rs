use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected width {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector width {0} is outside the supported range 1..=64")]
    UnsupportedWidth(usize),

    #[error("message index {index} is out of range for {n} messages")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("rows of an index code must be linearly independent")]
    DependentRows,

    #[error(
        "search exhausted: {reason} (n = {n}, limits: max messages {max_messages}, max length {max_length})"
    )]
    SearchExhausted {
        reason: String,
        n: usize,
        max_messages: usize,
        max_length: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("QoS rate {rate} is infeasible at alpha {alpha}: the far user cannot reach it at any power")]
    QosInfeasible { rate: f64, alpha: f64 },

    #[error("schedule does not match problem: {0}")]
    ScheduleMismatch(String),

    #[error("{0}")]
    Scenario(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
