use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::error::QcoreError;
use crate::linalg::{qr_decompose, unitarity_deviation, C64, CMatrix};

/// Allowed deviation of U U^dag from the identity.
const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    matrix: CMatrix,
}

impl UnitaryMatrix {
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
        let deviation = unitarity_deviation(&matrix);
        if deviation > UNITARITY_TOL {
            return Err(QcoreError::NotUnitary { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Result<Self, QcoreError> {
        if dim == 0 {
            return Err(QcoreError::EmptyDimension { dim });
        }
        Ok(Self {
            matrix: CMatrix::identity(dim, dim),
        })
    }

    /// Permutation unitary mapping basis state i to basis state map[i].
    pub fn from_permutation(map: &[usize]) -> Result<Self, QcoreError> {
        let dim = map.len();
        if dim == 0 {
            return Err(QcoreError::EmptyDimension { dim });
        }
        let mut seen = vec![false; dim];
        for &target in map {
            if target >= dim || seen[target] {
                return Err(QcoreError::InvalidProbabilities {
                    reason: format!("permutation table {map:?} is not a bijection on 0..{dim}"),
                });
            }
            seen[target] = true;
        }
        let mut matrix = CMatrix::zeros(dim, dim);
        for (source, &target) in map.iter().enumerate() {
            matrix[(target, source)] = C64::new(1.0, 0.0);
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Conjugation U rho U^dag.
    pub fn apply(&self, state: &DensityMatrix) -> Result<DensityMatrix, QcoreError> {
        if state.dim() != self.dim() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dim(),
                actual: state.dim(),
            });
        }
        let rotated = &self.matrix * state.matrix() * self.matrix.adjoint();
        DensityMatrix::new(rotated)
    }

    /// Composition: (self * other) acts as other first, then self.
    pub fn compose(&self, other: &UnitaryMatrix) -> Result<Self, QcoreError> {
        if self.dim() != other.dim() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Self::new(&self.matrix * &other.matrix)
    }
}

/// Conjugation as a free function, for call sites that read better that way.
pub fn apply_unitary(
    unitary: &UnitaryMatrix,
    state: &DensityMatrix,
) -> Result<DensityMatrix, QcoreError> {
    unitary.apply(state)
}

/// Haar-distributed random unitary, reproducible from a seed.
///
/// A Ginibre matrix (i.i.d. complex Gaussians) is QR-factored and Q's columns
/// are rephased by r_jj/|r_jj|, which removes the sign ambiguity of QR and
/// makes the distribution exactly Haar.
pub fn haar_random_unitary(dim: usize, seed: u64) -> Result<UnitaryMatrix, QcoreError> {
    if dim == 0 {
        return Err(QcoreError::EmptyDimension { dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * half, im * half)
    });
    let (q, r) = qr_decompose(&ginibre);
    let mut unitary = q;
    for j in 0..dim {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 1e-300 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            unitary[(i, j)] *= phase;
        }
    }
    UnitaryMatrix::new(unitary)
}
