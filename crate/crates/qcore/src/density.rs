use crate::error::QcoreError;
use crate::linalg::{hermitian_eigen, hermiticity_deviation, C64, CMatrix};
use crate::{EIGENVALUE_CLAMP, STRUCTURE_TOL};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
///
/// The spectrum is computed once at construction and cached, so entropy and
/// information queries are cheap. Eigenvalues in [-1e-10, 0) are clamped to
/// zero; anything more negative is rejected as not a state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    /// Validates and wraps a dense matrix as a quantum state.
    pub fn new(matrix: CMatrix) -> Result<Self, QcoreError> {
        if matrix.nrows() != matrix.ncols() {
            return Err(QcoreError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(QcoreError::EmptyDimension { dim: 0 });
        }
        let deviation = hermiticity_deviation(&matrix);
        if deviation > STRUCTURE_TOL {
            return Err(QcoreError::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STRUCTURE_TOL || trace.im.abs() > STRUCTURE_TOL {
            return Err(QcoreError::TraceNotOne { trace: trace.re });
        }
        let (raw_values, _) = hermitian_eigen(&matrix);
        let eigenvalues = clamp_spectrum(&raw_values)?;
        Ok(Self {
            matrix,
            eigenvalues,
        })
    }

    /// Diagonal state from a population vector. Skips the dense
    /// eigendecomposition, so it is cheap enough for inner loops.
    pub fn from_populations(populations: &[f64]) -> Result<Self, QcoreError> {
        if populations.is_empty() {
            return Err(QcoreError::EmptyDimension { dim: 0 });
        }
        let sum: f64 = populations.iter().sum();
        if (sum - 1.0).abs() > STRUCTURE_TOL {
            return Err(QcoreError::TraceNotOne { trace: sum });
        }
        let eigenvalues = clamp_spectrum(populations)?;
        let dim = populations.len();
        let matrix = CMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                C64::new(populations[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Ok(Self {
            matrix,
            eigenvalues,
        })
    }

    /// Rank-one state |psi><psi| from an amplitude vector.
    pub fn from_pure_state(amplitudes: &[C64]) -> Result<Self, QcoreError> {
        if amplitudes.is_empty() {
            return Err(QcoreError::EmptyDimension { dim: 0 });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-8 {
            return Err(QcoreError::InvalidProbabilities {
                reason: format!("state vector norm^2 is {norm_sq:.12}, expected 1"),
            });
        }
        let scale = norm_sq.sqrt();
        let dim = amplitudes.len();
        let matrix = CMatrix::from_fn(dim, dim, |i, j| {
            (amplitudes[i] / scale) * (amplitudes[j] / scale).conj()
        });
        let mut eigenvalues = vec![0.0; dim];
        eigenvalues[dim - 1] = 1.0;
        Ok(Self {
            matrix,
            eigenvalues,
        })
    }

    /// The state of complete ignorance, I/dim.
    pub fn maximally_mixed(dim: usize) -> Result<Self, QcoreError> {
        if dim == 0 {
            return Err(QcoreError::EmptyDimension { dim });
        }
        Self::from_populations(&vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Cached spectrum, ascending, with near-zero negatives clamped to 0.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Real parts of the diagonal, in basis order.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// True when every off-diagonal element is below `tol` in magnitude.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                if i != j && self.matrix[(i, j)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Von Neumann entropy -sum(lambda ln lambda), in nats. Round-off can
    /// push the raw sum a hair below zero; the result is floored at 0.
    pub fn von_neumann_entropy(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|&l| if l > 0.0 { -l * l.ln() } else { 0.0 })
            .sum::<f64>()
            .max(0.0)
    }

    /// Information relative to complete ignorance: ln(dim) - S.
    pub fn information_content(&self) -> f64 {
        (self.dim() as f64).ln() - self.von_neumann_entropy()
    }

    /// Expectation value of a diagonal observable given by its level values.
    pub fn diagonal_expectation(&self, levels: &[f64]) -> Result<f64, QcoreError> {
        if levels.len() != self.dim() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dim(),
                actual: levels.len(),
            });
        }
        Ok(self
            .populations()
            .iter()
            .zip(levels)
            .map(|(p, e)| p * e)
            .sum())
    }
}

fn clamp_spectrum(raw: &[f64]) -> Result<Vec<f64>, QcoreError> {
    let mut values = Vec::with_capacity(raw.len());
    for &v in raw {
        if v < -EIGENVALUE_CLAMP {
            return Err(QcoreError::NotPositiveSemidefinite { eigenvalue: v });
        }
        values.push(if v < 0.0 { 0.0 } else { v });
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("spectrum is finite"));
    Ok(values)
}
