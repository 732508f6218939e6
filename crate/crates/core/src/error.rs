//! Crate-wide error type.

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(&'static str),
    #[error("divisibility error: {0}")]
    Divisibility(&'static str),
    /// An enumeration cap was exceeded. Caps are hard errors, never a
    /// silent approximation.
    #[error("capacity error: {context} (cap {cap}, got {got})")]
    Capacity {
        context: &'static str,
        cap: usize,
        got: usize,
    },
    #[error("sampler failure: {0}")]
    Sampler(&'static str),
    #[error("classification failure: {0}")]
    Classification(&'static str),
    #[error("redistribution failure: {0}")]
    Redistribution(&'static str),
    #[error("pipeline failure: {0}")]
    Pipeline(&'static str),
    #[error("embedding failure: {0}")]
    EmbeddingFailure(&'static str),
    #[error("validation failure: {0}")]
    Validation(&'static str),
    #[error("estimation aborted: {0}")]
    Estimation(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
