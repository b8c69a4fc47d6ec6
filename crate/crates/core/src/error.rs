use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("working accuracy {0:e} outside [2^-52, 1)")]
    InvalidAccuracy(f64),

    #[error("Bessel function argument {0} is negative")]
    NegativeArgument(f64),

    #[error("frequency shift {0} must be finite and greater than -1")]
    InvalidShift(f64),

    #[error("problem size must be at least {min}, got {got}")]
    InvalidSize { min: usize, got: usize },

    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("Newton iteration for root {index} of J0 did not converge (residual {residual:e})")]
    RootNotConverged { index: usize, residual: f64 },
}
