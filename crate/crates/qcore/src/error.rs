use thiserror::Error;

#[derive(Debug, Error)]
pub enum QcoreError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |A - A^dag| element = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace:.12} but must be 1 within 1e-12")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e}")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("matrix is not unitary: max |U U^dag - I| element = {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("joint dimension {dim} exceeds the supported maximum of {max}")]
    JointDimensionTooLarge { dim: usize, max: usize },

    #[error("dimension must be at least 1, got {dim}")]
    EmptyDimension { dim: usize },

    #[error("probabilities must be nonnegative and sum to 1: {reason}")]
    InvalidProbabilities { reason: String },

    #[error("joint dimension {joint_dim} does not factor as demon {demon_dim} x target {target_dim}")]
    BadFactorization {
        joint_dim: usize,
        demon_dim: usize,
        target_dim: usize,
    },

    #[error("measurement outcomes lost probability mass {lost:.3e}, above the 1e-12 budget")]
    ProbabilityMassLost { lost: f64 },
}
