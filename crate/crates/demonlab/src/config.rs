use measure::{classical_correlating_unitary, MeasurementModel, MeasureError};
use serde::Deserialize;
use thermo::Spectrum;
use thiserror::Error;

use crate::scenario;

pub const DEFAULT_K_STEPS: usize = 10_000;
pub const DEFAULT_TRIALS: usize = 1;
pub const DEFAULT_TEMPERATURE: f64 = 1.0;
/// Gap used for the default raised spectrum when none is configured.
pub const DEFAULT_RAISED_GAP: f64 = 2.0;
pub const DEFAULT_CLOSURE_TOL: f64 = 1e-6;
pub const DEFAULT_EXCHANGE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Unreadable(String),

    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("unknown scenario {found:?}; expected one of {known:?}")]
    UnknownScenario { found: String, known: Vec<&'static str> },

    #[error("dims must each be at least 2, got {m}x{n}")]
    DimsTooSmall { m: usize, n: usize },

    #[error("joint dimension {0} exceeds the cap {max}", max = qcore::MAX_JOINT_DIM)]
    JointTooLarge(usize),

    #[error("{which} spectrum has {actual} levels but dims require {expected}")]
    SpectrumLength {
        which: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid spectrum: {0}")]
    BadSpectrum(String),

    #[error("temperature {0} must be positive and finite")]
    BadTemperature(f64),

    #[error("trials must be at least 1")]
    ZeroTrials,

    #[error("k_steps must be at least 1")]
    ZeroSteps,

    #[error("measurement kind {0:?} is not \"classical\" or \"haar\"")]
    UnknownMeasurementKind(String),

    #[error("classical measurement requires a table")]
    MissingTable,

    #[error("haar measurement takes no table")]
    UnexpectedTable,

    #[error("invalid classical table: {0}")]
    BadTable(String),

    #[error("cold_bath_cycle requires t_demon_reset < t_target")]
    NotCold,

    #[error("tolerance {0} must be positive")]
    BadTolerance(f64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: String,
    dims: Option<[usize; 2]>,
    t_target: Option<f64>,
    t_demon_reset: Option<f64>,
    target_spectrum: Option<Vec<f64>>,
    demon_raised_spectrum: Option<Vec<f64>>,
    measurement: Option<RawMeasurement>,
    trials: Option<usize>,
    k_steps: Option<usize>,
    seed: Option<u64>,
    tolerances: Option<RawTolerances>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasurement {
    kind: String,
    table: Option<Vec<[usize; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    closure: Option<f64>,
    exchange: Option<f64>,
}

/// How each trial's measurement model is produced. Classical tables are
/// fixed across trials; Haar models are redrawn from the trial's sub-seed.
#[derive(Debug, Clone)]
pub enum MeasurementSpec {
    Classical(Vec<(usize, usize)>),
    Haar,
}

impl MeasurementSpec {
    pub fn build(
        &self,
        dim_t: usize,
        dim_d: usize,
        seed: u64,
    ) -> Result<MeasurementModel, MeasureError> {
        match self {
            Self::Classical(table) => classical_correlating_unitary(table, dim_t, dim_d),
            Self::Haar => MeasurementModel::haar(dim_t, dim_d, seed),
        }
    }
}

/// A validated scenario run: every field is usable as-is.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub dim_t: usize,
    pub dim_d: usize,
    pub t_target: f64,
    pub t_demon_reset: f64,
    pub target_spectrum: Spectrum,
    pub demon_raised_spectrum: Spectrum,
    pub measurement: MeasurementSpec,
    pub trials: usize,
    pub k_steps: usize,
    pub seed: u64,
    pub closure_tol: f64,
    pub exchange_tol: f64,
}

impl ScenarioConfig {
    pub fn equal_temperatures(&self) -> bool {
        (self.t_demon_reset - self.t_target).abs() < 1e-12
    }
}

/// Parses and fully validates a TOML scenario document. Unknown keys are
/// rejected; everything except the scenario name has a documented default.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text)?;

    if !scenario::names().contains(&raw.scenario.as_str()) {
        return Err(ConfigError::UnknownScenario {
            found: raw.scenario,
            known: scenario::names(),
        });
    }

    let [dim_t, dim_d] = raw.dims.unwrap_or([2, 2]);
    if dim_t < 2 || dim_d < 2 {
        return Err(ConfigError::DimsTooSmall { m: dim_t, n: dim_d });
    }
    if dim_t * dim_d > qcore::MAX_JOINT_DIM {
        return Err(ConfigError::JointTooLarge(dim_t * dim_d));
    }

    let t_target = raw.t_target.unwrap_or(DEFAULT_TEMPERATURE);
    // the cold-bath scenario defaults to a reset bath at half the working
    // temperature; everything else defaults to equal baths
    let t_demon_reset = raw.t_demon_reset.unwrap_or(if raw.scenario == "cold_bath_cycle" {
        t_target / 2.0
    } else {
        t_target
    });
    for t in [t_target, t_demon_reset] {
        if !t.is_finite() || t <= 0.0 {
            return Err(ConfigError::BadTemperature(t));
        }
    }
    if raw.scenario == "cold_bath_cycle" && t_demon_reset >= t_target {
        return Err(ConfigError::NotCold);
    }

    let target_levels = raw.target_spectrum.unwrap_or_else(|| vec![0.0; dim_t]);
    if target_levels.len() != dim_t {
        return Err(ConfigError::SpectrumLength {
            which: "target",
            expected: dim_t,
            actual: target_levels.len(),
        });
    }
    let raised_levels = raw.demon_raised_spectrum.unwrap_or_else(|| {
        let mut levels = vec![DEFAULT_RAISED_GAP; dim_d];
        levels[0] = 0.0;
        levels
    });
    if raised_levels.len() != dim_d {
        return Err(ConfigError::SpectrumLength {
            which: "demon_raised",
            expected: dim_d,
            actual: raised_levels.len(),
        });
    }
    let target_spectrum =
        Spectrum::new(target_levels).map_err(|e| ConfigError::BadSpectrum(e.to_string()))?;
    let demon_raised_spectrum =
        Spectrum::new(raised_levels).map_err(|e| ConfigError::BadSpectrum(e.to_string()))?;

    let measurement = match raw.measurement {
        None => MeasurementSpec::Haar,
        Some(raw_m) => match raw_m.kind.as_str() {
            "haar" => {
                if raw_m.table.is_some() {
                    return Err(ConfigError::UnexpectedTable);
                }
                MeasurementSpec::Haar
            }
            "classical" => {
                let table: Vec<(usize, usize)> = raw_m
                    .table
                    .ok_or(ConfigError::MissingTable)?
                    .into_iter()
                    .map(|[m, n]| (m, n))
                    .collect();
                // build once now so a bad table fails at config time
                classical_correlating_unitary(&table, dim_t, dim_d)
                    .map_err(|e| ConfigError::BadTable(e.to_string()))?;
                MeasurementSpec::Classical(table)
            }
            other => return Err(ConfigError::UnknownMeasurementKind(other.to_string())),
        },
    };

    let trials = raw.trials.unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        return Err(ConfigError::ZeroTrials);
    }
    let k_steps = raw.k_steps.unwrap_or(DEFAULT_K_STEPS);
    if k_steps == 0 {
        return Err(ConfigError::ZeroSteps);
    }

    let tolerances = raw.tolerances.unwrap_or(RawTolerances {
        closure: None,
        exchange: None,
    });
    let closure_tol = tolerances.closure.unwrap_or(DEFAULT_CLOSURE_TOL);
    let exchange_tol = tolerances.exchange.unwrap_or(DEFAULT_EXCHANGE_TOL);
    for tol in [closure_tol, exchange_tol] {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(ConfigError::BadTolerance(tol));
        }
    }

    Ok(ScenarioConfig {
        scenario: raw.scenario,
        dim_t,
        dim_d,
        t_target,
        t_demon_reset,
        target_spectrum,
        demon_raised_spectrum,
        measurement,
        trials,
        k_steps,
        seed: raw.seed.unwrap_or(0),
        closure_tol,
        exchange_tol,
    })
}
