//! Measurement models for a bipartite target/demon system.
//!
//! A measurement is a joint unitary applied to a product state, followed by
//! a projective readout of the demon in its energy basis. The crate provides
//! classical permutation models (controlled shift, full swap, arbitrary
//! correlation tables), Haar-random general models, and an entropy ledger
//! that tracks where entropy moves when the demon acquires its record.
//!
//! Inputs are required to be diagonal in the energy eigenbasis: the physics
//! downstream (thermalization, level shifting) only ever produces such
//! states, and the readout arithmetic relies on it.

mod error;
mod model;
mod protocol;
mod report;

pub use error::MeasureError;
pub use model::{classical_correlating_unitary, MeasurementModel, ModelKind};
pub use protocol::perform_measurement;
pub use report::{entropy_exchange_report, EntropyExchangeReport};

pub use qcore::{MeasurementOutcome, OutcomeEnsemble};
