use qcore::DensityMatrix;

use crate::error::ThermoError;
use crate::spectrum::Spectrum;

/// Thermal equilibrium at a given temperature: populations proportional to
/// e^{-E_k/T}, together with the derived quantities the ledgers need.
#[derive(Debug, Clone)]
pub struct GibbsState {
    spectrum: Spectrum,
    temperature: f64,
    state: DensityMatrix,
    populations: Vec<f64>,
    partition: f64,
    free_energy: f64,
    mean_energy: f64,
    entropy: f64,
}

impl GibbsState {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    /// Z = sum e^{-E_k/T} over the anchored levels.
    pub fn partition(&self) -> f64 {
        self.partition
    }

    /// F = -T ln Z; equals mean_energy - T * entropy.
    pub fn free_energy(&self) -> f64 {
        self.free_energy
    }

    pub fn mean_energy(&self) -> f64 {
        self.mean_energy
    }

    pub fn entropy(&self) -> f64 {
        self.entropy
    }
}

/// Gibbs populations for a raw level vector, not necessarily anchored.
/// The largest Boltzmann weight is factored out before exponentiating, so
/// the result is stable for any finite offset.
pub(crate) fn gibbs_populations(levels: &[f64], temperature: f64) -> Result<Vec<f64>, ThermoError> {
    if temperature <= 0.0 {
        return Err(ThermoError::UnsupportedTemperature { temperature });
    }
    if levels.is_empty() {
        return Err(ThermoError::EmptySpectrum);
    }
    let min = levels.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = levels
        .iter()
        .map(|&e| (-(e - min) / temperature).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    let populations: Vec<f64> = weights.iter().map(|w| w / total).collect();
    for (p, &e) in populations.iter().zip(levels) {
        if *p <= 0.0 {
            return Err(ThermoError::PopulationUnderflow {
                level: e,
                temperature,
            });
        }
    }
    Ok(populations)
}

pub(crate) fn shannon_entropy(populations: &[f64]) -> f64 {
    populations
        .iter()
        .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
        .sum()
}

/// Thermal equilibrium state for a spectrum at temperature T > 0.
pub fn gibbs_state(spectrum: &Spectrum, temperature: f64) -> Result<GibbsState, ThermoError> {
    let populations = gibbs_populations(spectrum.levels(), temperature)?;
    let partition: f64 = spectrum
        .levels()
        .iter()
        .map(|&e| (-e / temperature).exp())
        .sum();
    let free_energy = -temperature * partition.ln();
    let mean_energy: f64 = populations
        .iter()
        .zip(spectrum.levels())
        .map(|(p, e)| p * e)
        .sum();
    let entropy = shannon_entropy(&populations);
    let state = DensityMatrix::from_populations(&populations)?;
    Ok(GibbsState {
        spectrum: spectrum.clone(),
        temperature,
        state,
        populations,
        partition,
        free_energy,
        mean_energy,
        entropy,
    })
}
