use crate::config::ScenarioConfig;
use crate::record::TrialRecord;
use crate::runner::RunError;
use crate::scenarios;

/// A named batch experiment. Implementations own the physics of one trial;
/// seeding, iteration, CSV emission, and summarizing live in the runner.
///
/// Every implementation must be a pure function of `(config, trial,
/// sub_seed)` so a rerun of the same config reproduces the CSV byte for
/// byte.
pub trait Scenario {
    fn name(&self) -> &'static str;

    fn run_trial(
        &self,
        config: &ScenarioConfig,
        trial: usize,
        sub_seed: u64,
    ) -> Result<TrialRecord, RunError>;
}

/// All scenarios, in a stable order. Selection is by name at runtime.
pub fn registry() -> Vec<Box<dyn Scenario>> {
    vec![
        Box::new(scenarios::EntropyExchangeSweep),
        Box::new(scenarios::Eq1BoundGrid),
        Box::new(scenarios::FullCycle),
        Box::new(scenarios::ColdBathCycle),
        Box::new(scenarios::BoltzmannMaximality),
    ]
}

pub fn names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name()).collect()
}

pub fn find(name: &str) -> Option<Box<dyn Scenario>> {
    registry().into_iter().find(|s| s.name() == name)
}
