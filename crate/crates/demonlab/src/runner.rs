use std::fmt::Display;

use thiserror::Error;

use crate::config::{ConfigError, ScenarioConfig};
use crate::record::TrialRecord;
use crate::scenario;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Config(#[from] ConfigError),

    /// A theorem or runtime failure inside one trial, tagged with the seed
    /// that reproduces it.
    #[error("trial {trial} (seed {seed}): {message}")]
    Trial {
        trial: usize,
        seed: u64,
        message: String,
    },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(String),
}

impl RunError {
    pub fn trial(trial: usize, seed: u64, err: impl Display) -> Self {
        Self::Trial {
            trial,
            seed,
            message: err.to_string(),
        }
    }

    /// Config problems exit 2; anything that failed while running exits 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Runs every trial of the configured scenario in order and returns the
/// records. Trial i is seeded with `seed + i` (wrapping), so a batch can be
/// reproduced from its config alone and any single row from its seed column.
pub fn run_scenario(config: &ScenarioConfig) -> Result<Vec<TrialRecord>, RunError> {
    let scenario = scenario::find(&config.scenario).ok_or_else(|| {
        RunError::Config(ConfigError::UnknownScenario {
            found: config.scenario.clone(),
            known: scenario::names(),
        })
    })?;
    let mut records = Vec::with_capacity(config.trials);
    for trial in 0..config.trials {
        let sub_seed = config.seed.wrapping_add(trial as u64);
        records.push(scenario.run_trial(config, trial, sub_seed)?);
    }
    Ok(records)
}
