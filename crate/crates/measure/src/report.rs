use qcore::DensityMatrix;

use crate::error::MeasureError;
use crate::model::MeasurementModel;
use crate::protocol::perform_measurement;

/// Entropy bookkeeping for one measurement, before and after readout.
///
/// All entropies are in nats. The final joint state is the projection
/// average sigma_tilde; its entropy splits exactly into the demon's record
/// entropy plus the average conditional target entropy, which is what makes
/// the exchange inequality checkable term by term.
#[derive(Debug, Clone)]
pub struct EntropyExchangeReport {
    /// Initial target entropy S(rho_t).
    pub s_t: f64,
    /// Initial demon entropy S(rho_d).
    pub s_d: f64,
    /// Initial joint entropy, S_t + S_d for a product state.
    pub s_0: f64,
    /// Entropy of the post-readout average joint state sigma_tilde.
    pub s_joint: f64,
    /// Average conditional target entropy, sum p_n S(rho_n).
    pub avg_s_t_fin: f64,
    /// Demon entropy after readout, -sum p_n ln p_n.
    pub s_d_fin: f64,
    /// Demon entropy change across the measurement.
    pub delta_s_d: f64,
    /// Average target entropy change (negative when information is gained).
    pub delta_s_t: f64,
    /// delta_s_d + delta_s_t; the exchange theorem says this is >= 0.
    pub inequality_slack: f64,
}

/// Measures and reduces the run to its entropy ledger.
pub fn entropy_exchange_report(
    model: &MeasurementModel,
    rho_t: &DensityMatrix,
    rho_d: &DensityMatrix,
) -> Result<EntropyExchangeReport, MeasureError> {
    let (ensemble, sigma_tilde) = perform_measurement(model, rho_t, rho_d)?;

    let s_t = rho_t.von_neumann_entropy();
    let s_d = rho_d.von_neumann_entropy();
    let s_0 = s_t + s_d;

    // Product-state additivity is the anchor for everything downstream;
    // a violation here means the state algebra itself is broken.
    let joint_initial = qcore::tensor_product(rho_t, rho_d)?.von_neumann_entropy();
    if (joint_initial - s_0).abs() > 1e-10 {
        return Err(MeasureError::AdditivityViolated {
            joint: joint_initial,
            sum: s_0,
        });
    }

    let avg_s_t_fin = ensemble.average_target_entropy();
    let s_d_fin = ensemble.demon_record_entropy();
    let delta_s_d = s_d_fin - s_d;
    let delta_s_t = avg_s_t_fin - s_t;

    Ok(EntropyExchangeReport {
        s_t,
        s_d,
        s_0,
        s_joint: sigma_tilde.von_neumann_entropy(),
        avg_s_t_fin,
        s_d_fin,
        delta_s_d,
        delta_s_t,
        inequality_slack: delta_s_d + delta_s_t,
    })
}
