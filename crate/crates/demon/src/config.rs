use measure::MeasurementModel;
use thermo::Spectrum;

use crate::error::DemonError;

/// Full specification of one work-extraction cycle.
///
/// The demon idles on degenerate levels; `demon_raised_spectrum` is where
/// the reset stage parks its levels to squeeze entropy out. Equal
/// temperatures give the closed-cycle scenario; a colder reset bath gives
/// the engine variant.
#[derive(Debug, Clone)]
pub struct CycleConfig {
    target_spectrum: Spectrum,
    demon_raised_spectrum: Spectrum,
    t_target: f64,
    t_demon_reset: f64,
    measurement: MeasurementModel,
    k_steps: usize,
}

impl CycleConfig {
    pub fn new(
        target_spectrum: Spectrum,
        demon_raised_spectrum: Spectrum,
        t_target: f64,
        t_demon_reset: f64,
        measurement: MeasurementModel,
        k_steps: usize,
    ) -> Result<Self, DemonError> {
        for t in [t_target, t_demon_reset] {
            if !t.is_finite() || t <= 0.0 {
                return Err(DemonError::UnsupportedTemperature(t));
            }
        }
        if k_steps == 0 {
            return Err(DemonError::ZeroSteps);
        }
        if measurement.dim_t() != target_spectrum.dim()
            || measurement.dim_d() != demon_raised_spectrum.dim()
        {
            return Err(DemonError::ConfigDimensionMismatch {
                model_t: measurement.dim_t(),
                model_d: measurement.dim_d(),
                spec_t: target_spectrum.dim(),
                spec_d: demon_raised_spectrum.dim(),
            });
        }
        Ok(Self {
            target_spectrum,
            demon_raised_spectrum,
            t_target,
            t_demon_reset,
            measurement,
            k_steps,
        })
    }

    pub fn target_spectrum(&self) -> &Spectrum {
        &self.target_spectrum
    }

    pub fn demon_raised_spectrum(&self) -> &Spectrum {
        &self.demon_raised_spectrum
    }

    pub fn target_dim(&self) -> usize {
        self.target_spectrum.dim()
    }

    pub fn demon_dim(&self) -> usize {
        self.demon_raised_spectrum.dim()
    }

    pub fn t_target(&self) -> f64 {
        self.t_target
    }

    pub fn t_demon_reset(&self) -> f64 {
        self.t_demon_reset
    }

    pub fn measurement(&self) -> &MeasurementModel {
        &self.measurement
    }

    pub fn k_steps(&self) -> usize {
        self.k_steps
    }

    pub fn equal_temperatures(&self) -> bool {
        (self.t_demon_reset - self.t_target).abs() < 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubit_config(t_target: f64, t_reset: f64, k: usize) -> Result<CycleConfig, DemonError> {
        CycleConfig::new(
            Spectrum::degenerate(2).unwrap(),
            Spectrum::new(vec![0.0, 2.0]).unwrap(),
            t_target,
            t_reset,
            MeasurementModel::controlled_shift(2).unwrap(),
            k,
        )
    }

    #[test]
    fn accepts_consistent_config() {
        let config = qubit_config(1.0, 1.0, 100).unwrap();
        assert!(config.equal_temperatures());
        assert_eq!(config.target_dim(), 2);
        assert_eq!(config.demon_dim(), 2);
    }

    #[test]
    fn rejects_bad_temperatures_and_steps() {
        assert!(matches!(
            qubit_config(0.0, 1.0, 100),
            Err(DemonError::UnsupportedTemperature(_))
        ));
        assert!(matches!(
            qubit_config(1.0, -2.0, 100),
            Err(DemonError::UnsupportedTemperature(_))
        ));
        assert!(matches!(qubit_config(1.0, 1.0, 0), Err(DemonError::ZeroSteps)));
    }

    #[test]
    fn rejects_model_spectrum_mismatch() {
        let err = CycleConfig::new(
            Spectrum::degenerate(3).unwrap(),
            Spectrum::new(vec![0.0, 2.0]).unwrap(),
            1.0,
            1.0,
            MeasurementModel::controlled_shift(2).unwrap(),
            100,
        );
        assert!(matches!(
            err,
            Err(DemonError::ConfigDimensionMismatch { .. })
        ));
    }
}
