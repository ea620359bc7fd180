use qcore::{haar_random_unitary, UnitaryMatrix};

use crate::error::MeasureError;

/// How the correlating unitary relates to the joint energy basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// A 0/1 permutation of the joint basis: generates classical
    /// correlations only and leaves diagonal states diagonal.
    ClassicalPermutation,
    /// Any joint unitary.
    General,
}

/// A measurement as a joint unitary on target (dim M) and demon (dim N),
/// followed by readout in the demon's energy basis.
#[derive(Debug, Clone)]
pub struct MeasurementModel {
    dim_t: usize,
    dim_d: usize,
    unitary: UnitaryMatrix,
    kind: ModelKind,
}

impl MeasurementModel {
    /// Wraps an arbitrary joint unitary.
    pub fn general(
        unitary: UnitaryMatrix,
        dim_t: usize,
        dim_d: usize,
    ) -> Result<Self, MeasureError> {
        if unitary.dim() != dim_t * dim_d {
            return Err(MeasureError::UnitaryDimensionMismatch {
                expected: dim_t * dim_d,
                actual: unitary.dim(),
            });
        }
        Ok(Self {
            dim_t,
            dim_d,
            unitary,
            kind: ModelKind::General,
        })
    }

    /// Haar-random joint unitary, reproducible from the seed.
    pub fn haar(dim_t: usize, dim_d: usize, seed: u64) -> Result<Self, MeasureError> {
        let unitary = haar_random_unitary(dim_t * dim_d, seed)?;
        Self::general(unitary, dim_t, dim_d)
    }

    /// The do-nothing measurement.
    pub fn identity(dim_t: usize, dim_d: usize) -> Result<Self, MeasureError> {
        let table: Vec<(usize, usize)> = (0..dim_t * dim_d)
            .map(|k| (k / dim_d, k % dim_d))
            .collect();
        classical_correlating_unitary(&table, dim_t, dim_d)
    }

    /// Controlled shift (m, n) -> (m, (n + m) mod dim): the qudit
    /// generalization of a controlled-NOT with the target as control.
    pub fn controlled_shift(dim: usize) -> Result<Self, MeasureError> {
        let table: Vec<(usize, usize)> = (0..dim * dim)
            .map(|k| {
                let (m, n) = (k / dim, k % dim);
                (m, (n + m) % dim)
            })
            .collect();
        classical_correlating_unitary(&table, dim, dim)
    }

    /// Full swap (m, n) -> (n, m): the demon walks away with a perfect copy
    /// of the target's energy distribution.
    pub fn full_swap(dim: usize) -> Result<Self, MeasureError> {
        let table: Vec<(usize, usize)> = (0..dim * dim)
            .map(|k| {
                let (m, n) = (k / dim, k % dim);
                (n, m)
            })
            .collect();
        classical_correlating_unitary(&table, dim, dim)
    }

    pub fn dim_t(&self) -> usize {
        self.dim_t
    }

    pub fn dim_d(&self) -> usize {
        self.dim_d
    }

    pub fn joint_dim(&self) -> usize {
        self.dim_t * self.dim_d
    }

    pub fn unitary(&self) -> &UnitaryMatrix {
        &self.unitary
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }
}

/// Builds the permutation unitary for a classical correlation table.
///
/// `table[m*N + n]` is the image (m', n') of basis state (m, n); the table
/// must be a bijection on the joint index set.
pub fn classical_correlating_unitary(
    table: &[(usize, usize)],
    dim_t: usize,
    dim_d: usize,
) -> Result<MeasurementModel, MeasureError> {
    let joint_dim = dim_t * dim_d;
    if table.len() != joint_dim {
        return Err(MeasureError::TableWrongLength {
            expected: joint_dim,
            actual: table.len(),
        });
    }
    let mut map = Vec::with_capacity(joint_dim);
    for &(m, n) in table {
        if m >= dim_t || n >= dim_d {
            return Err(MeasureError::TableIndexOutOfRange {
                m,
                n,
                dim_t,
                dim_d,
            });
        }
        map.push(m * dim_d + n);
    }
    let unitary =
        UnitaryMatrix::from_permutation(&map).map_err(|_| MeasureError::TableNotBijective)?;
    Ok(MeasurementModel {
        dim_t,
        dim_d,
        unitary,
        kind: ModelKind::ClassicalPermutation,
    })
}
