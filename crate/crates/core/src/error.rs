use thiserror::Error;

/// Errors raised by the model, witness and sweep layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A reduced state violated its positivity or trace constraints beyond
    /// tolerance. This points at an upstream bug, not at user input.
    #[error("inconsistent reduced state: {0}")]
    InconsistentState(String),

    #[error("outside the numerically representable range: {0}")]
    Range(String),

    #[error("no optimal CHSH settings: the correlation matrix vanishes")]
    NoSettings,

    #[error("state vector is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("qubit index error: {0}")]
    Index(String),

    #[error("system too large: {0}")]
    Size(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
