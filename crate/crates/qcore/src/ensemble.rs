use crate::density::DensityMatrix;
use crate::error::QcoreError;

/// One readout result: the demon level that fired, how often it fires, and
/// the target state conditioned on it.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub demon_index: usize,
    pub probability: f64,
    pub target_state: DensityMatrix,
}

/// The full set of readout outcomes, plus the entropy of the target state
/// the readout is judged against (the pre-measurement target).
#[derive(Debug, Clone)]
pub struct OutcomeEnsemble {
    outcomes: Vec<MeasurementOutcome>,
    initial_target_entropy: f64,
}

impl OutcomeEnsemble {
    /// Probabilities must be positive and sum to 1 up to the mass that the
    /// projection was allowed to discard.
    pub fn new(
        outcomes: Vec<MeasurementOutcome>,
        initial_target_entropy: f64,
    ) -> Result<Self, QcoreError> {
        if outcomes.is_empty() {
            return Err(QcoreError::InvalidProbabilities {
                reason: "no outcomes survived the probability threshold".to_string(),
            });
        }
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(QcoreError::InvalidProbabilities {
                reason: format!("outcome probabilities sum to {total:.12}"),
            });
        }
        for outcome in &outcomes {
            if outcome.probability <= 0.0 {
                return Err(QcoreError::InvalidProbabilities {
                    reason: format!(
                        "outcome {} has nonpositive probability {:.3e}",
                        outcome.demon_index, outcome.probability
                    ),
                });
            }
        }
        Ok(Self {
            outcomes,
            initial_target_entropy,
        })
    }

    pub fn outcomes(&self) -> &[MeasurementOutcome] {
        &self.outcomes
    }

    /// Same outcomes judged against a different pre-measurement entropy.
    /// Used when the readout context defines the reference state (for
    /// example the target before the correlating unitary, rather than the
    /// marginal after it).
    pub fn with_reference_entropy(mut self, initial_target_entropy: f64) -> Self {
        self.initial_target_entropy = initial_target_entropy;
        self
    }

    pub fn initial_target_entropy(&self) -> f64 {
        self.initial_target_entropy
    }

    /// Shannon entropy of the outcome record, H({p_m}) in nats. This is the
    /// entropy the demon acquires by storing the result.
    pub fn demon_record_entropy(&self) -> f64 {
        self.outcomes
            .iter()
            .map(|o| -o.probability * o.probability.ln())
            .sum()
    }

    /// Average entropy left in the target: sum_m p_m S(rho_m).
    pub fn average_target_entropy(&self) -> f64 {
        self.outcomes
            .iter()
            .map(|o| o.probability * o.target_state.von_neumann_entropy())
            .sum()
    }

    /// Information gained about the target: S(rho_initial) - sum p_m S(rho_m).
    pub fn information_gain(&self) -> f64 {
        self.initial_target_entropy - self.average_target_entropy()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn outcome(index: usize, p: f64, populations: &[f64]) -> MeasurementOutcome {
        MeasurementOutcome {
            demon_index: index,
            probability: p,
            target_state: DensityMatrix::from_populations(populations).unwrap(),
        }
    }

    #[test]
    fn perfect_readout_gains_all_entropy() {
        let initial = DensityMatrix::from_populations(&[0.6, 0.4]).unwrap();
        let ensemble = OutcomeEnsemble::new(
            vec![
                outcome(0, 0.6, &[1.0, 0.0]),
                outcome(1, 0.4, &[0.0, 1.0]),
            ],
            initial.von_neumann_entropy(),
        )
        .unwrap();
        assert_relative_eq!(
            ensemble.information_gain(),
            initial.von_neumann_entropy(),
            epsilon = 1e-14
        );
        assert_relative_eq!(
            ensemble.demon_record_entropy(),
            initial.von_neumann_entropy(),
            epsilon = 1e-14
        );
        assert!(ensemble.average_target_entropy().abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_probability_sum() {
        let err = OutcomeEnsemble::new(vec![outcome(0, 0.5, &[1.0, 0.0])], 0.0).unwrap_err();
        assert!(matches!(err, QcoreError::InvalidProbabilities { .. }));
    }

    #[test]
    fn uninformative_readout_gains_nothing() {
        let initial = DensityMatrix::from_populations(&[0.6, 0.4]).unwrap();
        let ensemble = OutcomeEnsemble::new(
            vec![
                outcome(0, 0.5, &[0.6, 0.4]),
                outcome(1, 0.5, &[0.6, 0.4]),
            ],
            initial.von_neumann_entropy(),
        )
        .unwrap();
        assert!(ensemble.information_gain().abs() < 1e-14);
        assert_relative_eq!(
            ensemble.demon_record_entropy(),
            2.0f64.ln(),
            epsilon = 1e-14
        );
    }
}
