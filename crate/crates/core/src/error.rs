use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition of an operation was not met.
    #[error("{module}: precondition violated: {message}")]
    Precondition {
        module: &'static str,
        message: String,
    },

    #[error("{module}: empty input: {what}")]
    Empty {
        module: &'static str,
        what: &'static str,
    },

    /// An exact search or enumeration would exceed its configured budget.
    #[error("{module}: capacity exceeded: {what} (limit {limit}, needed {needed})")]
    CapExceeded {
        module: &'static str,
        what: &'static str,
        limit: u64,
        needed: u64,
    },

    #[error("metric: dimension mismatch ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    /// Bisection endpoints did not straddle the accept/reject boundary.
    #[error("dimension: s-range [{s_lo}, {s_hi}] does not bracket a sign change ({detail})")]
    NoBracket { s_lo: f64, s_hi: f64, detail: String },

    #[error("constructions: bit source exhausted after {consumed} bits")]
    BitsExhausted { consumed: u64 },

    #[error("algodim: net too coarse at log2(delta) = {log2_delta}: no codeword within delta")]
    NetTooCoarse { log2_delta: f64 },

    /// A failure while processing one scale of a schedule.
    #[error("at delta = {delta}: {source}")]
    AtScale { delta: f64, source: Box<Error> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn pre(module: &'static str, message: impl Into<String>) -> Self {
        Error::Precondition {
            module,
            message: message.into(),
        }
    }

    /// Whether this error came from bad user input rather than a failed computation.
    pub fn is_config_error(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
