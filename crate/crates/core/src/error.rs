use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("limit at {at} did not converge (successive extrapolants differ by {spread:.3e})")]
    NonConvergence { at: Complex64, spread: f64 },

    #[error("ill-conditioned denominator {value:.3e} at z = {z}")]
    Conditioning { z: Complex64, value: f64 },

    #[error("pole of the chain functions near z = {0}")]
    Pole(Complex64),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parameter {index} lies on the unit circle; classify with schur_solvability instead")]
    BoundaryParameter { index: usize },

    #[error("verification failed: {0}")]
    Verification(String),
}
