use qcore::DensityMatrix;

use crate::error::ThermoError;
use crate::gibbs::{gibbs_populations, gibbs_state};
use crate::spectrum::Spectrum;

/// Off-diagonal magnitude above which a state no longer counts as diagonal.
const DIAGONAL_TOL: f64 = 1e-12;

/// Record of one quasi-static isothermal level shift.
///
/// Sign conventions: work_in is positive when the agent pushes energy into
/// the system; heat_to_bath is positive when the system sheds heat. The
/// first law then reads work_in - heat_to_bath = change in mean energy.
#[derive(Debug, Clone)]
pub struct IsothermalPath {
    pub start: Spectrum,
    pub end: Spectrum,
    pub temperature: f64,
    pub steps: usize,
    pub work_in: f64,
    pub heat_to_bath: f64,
    pub entropy_change: f64,
    /// Exact free-energy difference of the endpoints; work_in approaches
    /// this from above as steps grow, with O(1/steps) excess.
    pub free_energy_change: f64,
    pub mean_energy_change: f64,
}

impl IsothermalPath {
    /// Work wasted relative to the reversible limit; nonnegative.
    pub fn dissipation(&self) -> f64 {
        self.work_in - self.free_energy_change
    }
}

/// Slow level shift in contact with the bath: at each of K steps the levels
/// move a 1/K fraction of the way (state frozen, work exchanged), then the
/// system re-thermalizes at the new levels (heat exchanged).
///
/// Mid-path level vectors are interpolated raw and never re-anchored:
/// re-anchoring inside the path would insert a fictitious gauge jump and
/// corrupt the work ledger. Only endpoint spectra carry the anchor.
pub fn quasistatic_isothermal(
    start: &Spectrum,
    end: &Spectrum,
    temperature: f64,
    steps: usize,
) -> Result<IsothermalPath, ThermoError> {
    if start.dim() != end.dim() {
        return Err(ThermoError::DimensionMismatch {
            expected: start.dim(),
            actual: end.dim(),
        });
    }
    if steps == 0 {
        return Err(ThermoError::ZeroSteps);
    }
    let initial = gibbs_state(start, temperature)?;
    let final_eq = gibbs_state(end, temperature)?;
    let dim = start.dim();

    let mut populations = initial.populations().to_vec();
    let mut work_in = 0.0;
    let mut heat_from_bath = 0.0;
    let mut levels: Vec<f64> = start.levels().to_vec();
    let inv_steps = 1.0 / steps as f64;

    for k in 1..=steps {
        let s = k as f64 * inv_steps;
        let next_levels: Vec<f64> = start
            .levels()
            .iter()
            .zip(end.levels())
            .map(|(&a, &b)| (1.0 - s) * a + s * b)
            .collect();
        for i in 0..dim {
            work_in += populations[i] * (next_levels[i] - levels[i]);
        }
        let next_populations = gibbs_populations(&next_levels, temperature)?;
        for i in 0..dim {
            heat_from_bath += next_levels[i] * (next_populations[i] - populations[i]);
        }
        populations = next_populations;
        levels = next_levels;
    }

    Ok(IsothermalPath {
        start: start.clone(),
        end: end.clone(),
        temperature,
        steps,
        work_in,
        heat_to_bath: -heat_from_bath,
        entropy_change: final_eq.entropy() - initial.entropy(),
        free_energy_change: final_eq.free_energy() - initial.free_energy(),
        mean_energy_change: final_eq.mean_energy() - initial.mean_energy(),
    })
}

/// Instantaneous level shift: the state (and hence its entropy) is frozen,
/// and the only exchange is work equal to the expected level displacement.
pub fn quench(
    spectrum_from: &Spectrum,
    spectrum_to: &Spectrum,
    state: &DensityMatrix,
) -> Result<(DensityMatrix, f64), ThermoError> {
    if spectrum_from.dim() != spectrum_to.dim() {
        return Err(ThermoError::DimensionMismatch {
            expected: spectrum_from.dim(),
            actual: spectrum_to.dim(),
        });
    }
    if state.dim() != spectrum_from.dim() {
        return Err(ThermoError::DimensionMismatch {
            expected: spectrum_from.dim(),
            actual: state.dim(),
        });
    }
    if !state.is_diagonal(DIAGONAL_TOL) {
        let deviation = max_off_diagonal(state);
        return Err(ThermoError::NonDiagonalState { deviation });
    }
    let work_in: f64 = state
        .populations()
        .iter()
        .zip(spectrum_to.levels().iter().zip(spectrum_from.levels()))
        .map(|(p, (to, from))| p * (to - from))
        .sum();
    Ok((state.clone(), work_in))
}

fn max_off_diagonal(state: &DensityMatrix) -> f64 {
    let m = state.matrix();
    let dim = state.dim();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}
