use qcore::{
    average_over_projection, project_onto_demon_basis, tensor_product, DensityMatrix, JointState,
    OutcomeEnsemble,
};

use crate::error::MeasureError;
use crate::model::MeasurementModel;

/// Off-diagonal magnitude above which an input no longer counts as diagonal.
const DIAGONAL_TOL: f64 = 1e-12;

/// Budget for the block entropy decomposition consistency check.
const DECOMPOSITION_TOL: f64 = 1e-9;

/// Runs one measurement: correlate target and demon with the model's joint
/// unitary, then read the demon out in its energy basis.
///
/// Returns the outcome ensemble (probabilities, conditional target states,
/// information gain relative to the initial rho_t) and the post-readout
/// average joint state sigma_tilde. Before returning, the block identity
/// S(sigma_tilde) = H({p_n}) + sum p_n S(rho_n) is verified; a mismatch
/// means a numerical fault, not physics.
pub fn perform_measurement(
    model: &MeasurementModel,
    rho_t: &DensityMatrix,
    rho_d: &DensityMatrix,
) -> Result<(OutcomeEnsemble, JointState), MeasureError> {
    check_input(rho_t, model.dim_t(), "target")?;
    check_input(rho_d, model.dim_d(), "demon")?;

    let sigma_0 = tensor_product(rho_t, rho_d)?;
    let sigma_u = sigma_0.apply_unitary(model.unitary())?;
    let sigma_tilde = average_over_projection(&sigma_u)?;
    let ensemble = project_onto_demon_basis(&sigma_u)?
        .with_reference_entropy(rho_t.von_neumann_entropy());

    let decomposed = ensemble.demon_record_entropy() + ensemble.average_target_entropy();
    let direct = sigma_tilde.von_neumann_entropy();
    if (decomposed - direct).abs() > DECOMPOSITION_TOL {
        return Err(MeasureError::EntropyDecomposition { decomposed, direct });
    }
    Ok((ensemble, sigma_tilde))
}

fn check_input(
    state: &DensityMatrix,
    expected_dim: usize,
    which: &'static str,
) -> Result<(), MeasureError> {
    if state.dim() != expected_dim {
        return Err(MeasureError::StateDimensionMismatch {
            which,
            expected: expected_dim,
            actual: state.dim(),
        });
    }
    if !state.is_diagonal(DIAGONAL_TOL) {
        let m = state.matrix();
        let mut deviation = 0.0f64;
        for i in 0..state.dim() {
            for j in 0..state.dim() {
                if i != j {
                    deviation = deviation.max(m[(i, j)].norm());
                }
            }
        }
        return Err(MeasureError::NonDiagonalInput { which, deviation });
    }
    Ok(())
}
