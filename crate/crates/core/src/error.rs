use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: duplicate letters, not a permutation, negative
    /// coefficients where non-negative ones are required, and so on.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration or brute-force scan was refused because it exceeds the
    /// configured size bound.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// An internal consistency assertion failed (non-vanishing series tail,
    /// non-integral coefficient, nonzero substitution residual). These
    /// indicate a wrong truncation order or an upstream bug, never bad user
    /// input.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
