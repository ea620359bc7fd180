use qcore::OutcomeEnsemble;
use thermo::{gibbs_state, quasistatic_isothermal, Spectrum};

use crate::error::DemonError;
use crate::ledger::{checked_record, StageRecord};

/// Populations below this are treated as zero when matching levels to a
/// state; the corresponding level is capped instead of sent to infinity.
const POPULATION_FLOOR: f64 = 1e-15;

/// Extracts work from each measurement outcome and returns the target to
/// equilibrium, closing its side of the cycle.
///
/// Per outcome the protocol is: rotate the state diagonal with populations
/// descending in basis order, quench the levels to the spectrum whose Gibbs
/// state that already is, then slowly restore the physical spectrum. The
/// total work out per outcome is its nonequilibrium free energy above F_eq,
/// minus the dissipation of the slow leg.
///
/// Zero populations would need infinitely high matching levels; they are
/// parked at -T ln(POPULATION_FLOOR), costing an extraction shortfall far
/// below every tolerance in the workspace. Return legs that start far from
/// the physical spectrum get their step count boosted in proportion to the
/// travel so the dissipation budget stays uniform across outcomes.
pub fn run_feedback_stage(
    ensemble: &OutcomeEnsemble,
    target_spectrum: &Spectrum,
    t_target: f64,
    k_steps: usize,
) -> Result<(f64, StageRecord), DemonError> {
    if !t_target.is_finite() || t_target <= 0.0 {
        return Err(DemonError::UnsupportedTemperature(t_target));
    }
    if k_steps == 0 {
        return Err(DemonError::ZeroSteps);
    }
    let eq = gibbs_state(target_spectrum, t_target)?;
    let levels = target_spectrum.levels();
    let cap = -t_target * POPULATION_FLOOR.ln();

    let mut work_on = 0.0;
    let mut heat_to_bath = 0.0;
    let mut delta_energy = 0.0;
    for outcome in ensemble.outcomes() {
        let p = outcome.probability;
        let rho = &outcome.target_state;

        let mut lambda = rho.eigenvalues().to_vec();
        lambda.reverse();

        let energy_start = rho.diagonal_expectation(levels)?;
        let energy_rotated: f64 = lambda.iter().zip(levels).map(|(l, e)| l * e).sum();
        let work_rotate = energy_rotated - energy_start;

        // c shifts the matching levels so the occupied ground level sits at 0
        let c = t_target * lambda[0].ln();
        let matching: Vec<f64> = lambda
            .iter()
            .map(|&l| {
                if l > POPULATION_FLOOR {
                    (c - t_target * l.ln()).min(cap)
                } else {
                    cap
                }
            })
            .collect();
        let energy_matched: f64 = lambda.iter().zip(&matching).map(|(l, e)| l * e).sum();
        let work_quench = energy_matched - energy_rotated;
        let matching = Spectrum::new(matching)?;

        let travel = matching
            .levels()
            .iter()
            .zip(levels)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let boost = ((2.0 * travel / t_target).ceil() as usize).max(1);
        let path = quasistatic_isothermal(&matching, target_spectrum, t_target, k_steps * boost)?;

        work_on += p * (work_rotate + work_quench + path.work_in);
        heat_to_bath += p * path.heat_to_bath;
        delta_energy += p * (eq.mean_energy() - energy_start);
    }

    let extracted = -work_on;
    let (work_in, work_out) = if work_on >= 0.0 {
        (work_on, 0.0)
    } else {
        (0.0, extracted)
    };
    let record = checked_record(
        "feedback",
        work_in,
        work_out,
        heat_to_bath,
        delta_energy,
        ensemble.demon_record_entropy(),
        eq.entropy(),
    )?;
    Ok((extracted, record))
}
