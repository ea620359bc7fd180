//! Seeded batch driver for the measurement-cycle experiments.
//!
//! A TOML config names one scenario from the registry plus its physical
//! parameters; the runner executes `trials` independent trials seeded
//! `seed + trial_index` and writes one CSV row per trial in a fixed column
//! layout shared by every scenario. Summaries are recomputed by parsing the
//! emitted CSV, so the printed report can never drift from the file.
//!
//! Scenarios:
//! - `entropy_exchange_sweep`: measurement entropy bookkeeping on random
//!   diagonal states,
//! - `eq1_bound_grid`: the minimum-heat integral against its isothermal
//!   lower bound and its mean-energy oracle,
//! - `full_cycle`: the five-stage engine cycle with the closure check,
//! - `cold_bath_cycle`: the same cycle run against a colder reset bath,
//! - `boltzmann_maximality`: entropy maximality of the Boltzmann
//!   distribution at fixed mean energy.

pub mod config;
pub mod record;
pub mod runner;
pub mod scenario;
mod scenarios;

pub use config::{parse_config, ConfigError, MeasurementSpec, ScenarioConfig};
pub use record::{emit_csv, summarize_csv, Summary, TrialRecord, CSV_HEADER};
pub use runner::{run_scenario, RunError};
pub use scenario::{registry, Scenario};
