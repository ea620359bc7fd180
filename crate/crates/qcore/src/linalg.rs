//! Thin wrappers around the dense linear-algebra backend.
//!
//! All eigendecompositions and QR factorizations in the workspace go through
//! this module, so the backend can be swapped in one place.

use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns (eigenvalues, eigenvectors) with eigenvalues real and sorted
/// ascending; column j of the eigenvector matrix corresponds to value j.
/// The caller guarantees Hermiticity; this function does not re-validate.
pub fn hermitian_eigen(matrix: &CMatrix) -> (Vec<f64>, CMatrix) {
    let dim = matrix.nrows();
    let eigen = matrix.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[a]
            .partial_cmp(&eigen.eigenvalues[b])
            .expect("eigenvalues of a Hermitian matrix are finite")
    });
    let values: Vec<f64> = order.iter().map(|&j| eigen.eigenvalues[j]).collect();
    let mut vectors = CMatrix::zeros(dim, dim);
    for (new_col, &old_col) in order.iter().enumerate() {
        vectors.set_column(new_col, &eigen.eigenvectors.column(old_col));
    }
    (values, vectors)
}

/// QR factorization returning (Q, R) with Q unitary.
pub fn qr_decompose(matrix: &CMatrix) -> (CMatrix, CMatrix) {
    let qr = matrix.clone().qr();
    (qr.q(), qr.r())
}

/// Max absolute element of A - A^dag, as a Hermiticity deviation measure.
pub fn hermiticity_deviation(matrix: &CMatrix) -> f64 {
    let adjoint = matrix.adjoint();
    (matrix - adjoint)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Max absolute element of U U^dag - I.
pub fn unitarity_deviation(matrix: &CMatrix) -> f64 {
    let dim = matrix.nrows();
    let product = matrix * matrix.adjoint();
    let identity = CMatrix::identity(dim, dim);
    (product - identity)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}
