use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion has zero modulus")]
    ZeroQuaternion,

    #[error("quaternion lies on the negative real axis (theta = {theta})")]
    NegativeRealAxis { theta: f64 },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("{what} is not a unit (deviation {deviation:e})")]
    NotUnit { what: &'static str, deviation: f64 },

    #[error("matrix is not in the quasi-projective space (residual {residual:e})")]
    NotInQn { residual: f64 },

    #[error("point lies outside the closed unit ball (norm {norm})")]
    OutOfBall { norm: f64 },

    #[error("logarithm branch cut violated: lambda is within {distance:e} of -1")]
    BranchViolation { distance: f64 },

    #[error("domain error: {0}")]
    DomainError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
