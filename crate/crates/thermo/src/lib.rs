//! Thermodynamics of diagonal Hamiltonians in contact with a heat bath.
//!
//! Energies are dimensionless with k_B = 1, so temperature and energy share
//! one unit and entropy is in nats. The bath is ideal: thermalization takes
//! the system to the Gibbs state of whatever levels are currently set, and
//! there are no finite-rate corrections. Work enters only through level
//! shifts; heat enters only through re-thermalization.

pub mod error;
pub mod gibbs;
pub mod min_heat;
pub mod process;
pub mod sampling;
pub mod spectrum;

pub use error::ThermoError;
pub use gibbs::{gibbs_state, GibbsState};
pub use min_heat::{entropy_matching_temperature, min_heat_for_entropy_increase};
pub use process::{quasistatic_isothermal, quench, IsothermalPath};
pub use sampling::sample_populations_with_mean_energy;
pub use spectrum::Spectrum;
