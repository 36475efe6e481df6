use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("invalid algebra descriptor `{0}`")]
    Descriptor(String),

    #[error("invalid exponent `{0}`: must lie in [1, inf]")]
    Exponent(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("expected a spectrum of length {expected}, got {got}")]
    SpectrumLength { expected: usize, got: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("wrong shape: {0}")]
    Shape(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
