use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("bandwidth window {width} exceeds the limit {limit}")]
    UnsupportedWidth { width: usize, limit: usize },
    #[error("{what} limit exceeded: {value} > {limit}")]
    LimitExceeded {
        what: &'static str,
        value: String,
        limit: u64,
    },
    #[error("not a perfect matching of the graph: {0}")]
    NotAMatching(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("insufficient samples: got {got}, need at least {need}")]
    InsufficientSamples { got: usize, need: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("root not bracketed in [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },
    #[error("distribution not normalized: total mass {0}")]
    NonNormalized(f64),
}

impl Error {
    /// True for errors caused by a configured computation limit.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. } | Error::UnsupportedWidth { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
