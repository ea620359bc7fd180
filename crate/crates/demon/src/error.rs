use measure::MeasureError;
use qcore::QcoreError;
use thermo::ThermoError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DemonError {
    #[error(
        "measurement model is {model_t}x{model_d} but spectra have dims {spec_t}x{spec_d}"
    )]
    ConfigDimensionMismatch {
        model_t: usize,
        model_d: usize,
        spec_t: usize,
        spec_d: usize,
    },

    #[error("temperature must be positive and finite, got {0}")]
    UnsupportedTemperature(f64),

    #[error("quasi-static step count must be at least 1")]
    ZeroSteps,

    /// The demon's entropy rose by more than the reset removed. This bound
    /// is a theorem for the implemented models, so tripping it means the
    /// state algebra is wrong, not the physics.
    #[error(
        "demon entropy rise {delta_s_demon} exceeds the reset reduction {delta_s_reset}"
    )]
    DemonEntropyBound {
        delta_s_demon: f64,
        delta_s_reset: f64,
    },

    /// Information gained about the target exceeded the demon's entropy
    /// rise, violating the exchange theorem. Implementation bug indicator.
    #[error("information gain {delta_i} exceeds demon entropy rise {delta_s_demon}")]
    InformationBound { delta_i: f64, delta_s_demon: f64 },

    #[error("stage {stage} violates the first law: residual {residual}")]
    EnergyImbalance { stage: &'static str, residual: f64 },

    /// W_d = <E> + T dS failed by more than the discretization budget.
    #[error("reset work {w_d} deviates from <E> + T dS = {decomposed} beyond budget {budget}")]
    ResetDecompositionBroken {
        w_d: f64,
        decomposed: f64,
        budget: f64,
    },

    /// Positive net work over a closed cycle at equal temperatures.
    #[error("net work {net} escapes the closure bound at equal temperatures")]
    ClosureViolated { net: f64 },

    /// The reset's free-energy store failed to cover the extracted work at
    /// equal temperatures.
    #[error("free-energy store {store} is below the extracted work {extracted}")]
    StoreBelowExtraction { store: f64, extracted: f64 },

    /// The minimum heat to raise the demon's entropy fell below T dI.
    #[error("minimum heat {heat} is below the information bound {t_delta_i}")]
    HeatBelowInformationBound { heat: f64, t_delta_i: f64 },

    #[error(transparent)]
    Thermo(#[from] ThermoError),

    #[error(transparent)]
    Measure(#[from] MeasureError),

    #[error(transparent)]
    State(#[from] QcoreError),
}
