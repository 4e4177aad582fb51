use thiserror::Error;

/// Errors raised by evaluators, oracles and the sweep harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("tail bound diverges at k_start = {k_start}; increase k_start")]
    DivergentBound { k_start: u64 },

    #[error("evaluation budget exhausted after {terms} terms (achieved bound {achieved:e})")]
    Budget { terms: usize, achieved: f64 },

    #[error("quadrature did not converge within {samples} samples")]
    Quadrature { samples: usize },

    #[error("range error: {0}")]
    Range(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parameter `{name}` out of domain: {reason}")]
    OutOfDomain { name: String, reason: String },

    #[error("unknown mode `{0}`")]
    UnknownMode(String),

    #[error("no saddle found for n = {n} within radius {radius}")]
    NoSaddle { n: u32, radius: f64 },

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
