//! The full measurement-powered work cycle, with an enforced ledger.
//!
//! One cycle runs five stages: slowly raise the demon's levels to squeeze
//! its entropy into the reset bath (costing W_d), drop the levels to cash
//! the mean energy back out, correlate the energy-free demon with the
//! target and read it out, extract the target's resulting free-energy
//! surplus, and finally let the record relax away. Every stage settles a
//! first-law account, and the cycle as a whole proves out the budget: at
//! equal temperatures the extraction never beats the reset cost, while a
//! colder reset bath turns the same machinery into an engine.

mod config;
mod cycle;
mod error;
mod feedback;
mod ledger;
mod report;
mod stages;

pub use config::CycleConfig;
pub use cycle::run_full_cycle;
pub use error::DemonError;
pub use feedback::run_feedback_stage;
pub use ledger::{CycleLedger, StageRecord};
pub use report::{measurement_cost_report, MeasurementCostReport};
pub use stages::{run_measurement_stage, run_quench_stage, run_reset_stage};
