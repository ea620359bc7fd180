//! Core linear-algebra layer for finite-dimensional quantum states.
//!
//! Everything downstream (thermodynamic processes, measurement models, the
//! demon cycle) works in terms of the types here: density matrices with
//! validated structure, joint demon+target states, and unitaries. Entropy is
//! measured in nats throughout and Boltzmann's constant is set to 1, so
//! energy, heat, and temperature share one unit.

pub mod density;
pub mod ensemble;
pub mod error;
pub mod joint;
pub mod linalg;
pub mod unitary;

pub use density::DensityMatrix;
pub use ensemble::{MeasurementOutcome, OutcomeEnsemble};
pub use error::QcoreError;
pub use joint::{
    average_over_projection, project_onto_demon_basis, tensor_product, JointState,
    OUTCOME_THRESHOLD,
};
pub use linalg::{C64, CMatrix};
pub use unitary::{apply_unitary, haar_random_unitary, UnitaryMatrix};

/// Joint dimensions above this are rejected; dense eigendecompositions past
/// 64x64 are too slow for the sweep workloads this library exists to serve.
pub const MAX_JOINT_DIM: usize = 64;

/// Absolute tolerance for Hermiticity and unit-trace validation.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// Eigenvalues in [-EIGENVALUE_CLAMP, 0) are treated as exact zeros;
/// anything more negative fails positive-semidefiniteness validation.
pub const EIGENVALUE_CLAMP: f64 = 1e-10;
