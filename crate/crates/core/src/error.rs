use thiserror::Error;

/// Errors surfaced by rule construction, application and analysis.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("unknown scheme identifier `{0}`")]
    UnknownScheme(String),

    #[error("unsupported scheme combination: {0}")]
    UnsupportedScheme(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite field entry at cell {0}")]
    NonFinite(usize),

    #[error("field too small: {0} cells (minimum 4)")]
    FieldTooSmall(usize),

    #[error("unstable at all nu >= {0}")]
    UnstableAtAllNu(f64),

    #[error("symbol expansion ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("serialization error: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
