use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThermoError {
    #[error("temperature must be positive, got {temperature}")]
    UnsupportedTemperature { temperature: f64 },

    #[error("spectrum must have at least one level")]
    EmptySpectrum,

    #[error("spectrum level is not finite: {value}")]
    NonFiniteLevel { value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("step count must be at least 1")]
    ZeroSteps,

    #[error("population underflow: level {level} at temperature {temperature} rounds to zero")]
    PopulationUnderflow { level: f64, temperature: f64 },

    #[error(
        "entropy increase {requested:.6e} is not reachable; supremum for this spectrum is {supremum:.6e}"
    )]
    UnreachableEntropy { requested: f64, supremum: f64 },

    #[error("entropy increase must be nonnegative, got {value:.6e}")]
    NegativeEntropyIncrease { value: f64 },

    #[error("temperature search did not converge within {iterations} iterations")]
    SearchDidNotConverge { iterations: usize },

    #[error("state is not diagonal in the energy basis: max off-diagonal magnitude {deviation:.3e}")]
    NonDiagonalState { deviation: f64 },

    #[error("rejection sampling failed to produce a valid state after {attempts} attempts")]
    SamplingFailed { attempts: usize },

    #[error(transparent)]
    State(#[from] qcore::QcoreError),
}
