use crate::density::DensityMatrix;
use crate::ensemble::{MeasurementOutcome, OutcomeEnsemble};
use crate::error::QcoreError;
use crate::linalg::CMatrix;
use crate::unitary::UnitaryMatrix;
use crate::MAX_JOINT_DIM;

/// Probability below which a projection outcome is discarded. The total
/// discarded mass is checked against the same budget.
pub const OUTCOME_THRESHOLD: f64 = 1e-12;

/// A bipartite target+demon state on an (M*N)-dimensional Hilbert space,
/// M = target dim, N = demon dim.
///
/// Index convention, shared by every module: basis vector |m>_t (x) |n>_d
/// sits at joint index m*N + n. The target index is the major one, so the
/// demon blocks used by projection are strided, not contiguous.
#[derive(Debug, Clone)]
pub struct JointState {
    state: DensityMatrix,
    target_dim: usize,
    demon_dim: usize,
}

impl JointState {
    pub fn new(
        state: DensityMatrix,
        target_dim: usize,
        demon_dim: usize,
    ) -> Result<Self, QcoreError> {
        if target_dim == 0 || demon_dim == 0 {
            return Err(QcoreError::EmptyDimension { dim: 0 });
        }
        if state.dim() != target_dim * demon_dim {
            return Err(QcoreError::BadFactorization {
                joint_dim: state.dim(),
                demon_dim,
                target_dim,
            });
        }
        if state.dim() > MAX_JOINT_DIM {
            return Err(QcoreError::JointDimensionTooLarge {
                dim: state.dim(),
                max: MAX_JOINT_DIM,
            });
        }
        Ok(Self {
            state,
            target_dim,
            demon_dim,
        })
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn demon_dim(&self) -> usize {
        self.demon_dim
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn von_neumann_entropy(&self) -> f64 {
        self.state.von_neumann_entropy()
    }

    /// Partial trace over the demon, leaving the target's state.
    pub fn target_marginal(&self) -> Result<DensityMatrix, QcoreError> {
        let (m_dim, n_dim) = (self.target_dim, self.demon_dim);
        let joint = self.state.matrix();
        let reduced = CMatrix::from_fn(m_dim, m_dim, |m, mp| {
            (0..n_dim)
                .map(|n| joint[(m * n_dim + n, mp * n_dim + n)])
                .sum()
        });
        DensityMatrix::new(reduced)
    }

    /// Partial trace over the target, leaving the demon's state.
    pub fn demon_marginal(&self) -> Result<DensityMatrix, QcoreError> {
        let (m_dim, n_dim) = (self.target_dim, self.demon_dim);
        let joint = self.state.matrix();
        let reduced = CMatrix::from_fn(n_dim, n_dim, |n, np| {
            (0..m_dim)
                .map(|m| joint[(m * n_dim + n, m * n_dim + np)])
                .sum()
        });
        DensityMatrix::new(reduced)
    }

    pub fn apply_unitary(&self, unitary: &UnitaryMatrix) -> Result<Self, QcoreError> {
        let rotated = unitary.apply(&self.state)?;
        Self::new(rotated, self.target_dim, self.demon_dim)
    }
}

/// Product state rho_t (x) rho_d under the shared index convention. Diagonal
/// factors give diagonal output with lambda_mn = t_m * d_n at index m*N + n.
pub fn tensor_product(
    target: &DensityMatrix,
    demon: &DensityMatrix,
) -> Result<JointState, QcoreError> {
    let (m_dim, n_dim) = (target.dim(), demon.dim());
    let joint_dim = m_dim * n_dim;
    if joint_dim > MAX_JOINT_DIM {
        return Err(QcoreError::JointDimensionTooLarge {
            dim: joint_dim,
            max: MAX_JOINT_DIM,
        });
    }
    let t = target.matrix();
    let d = demon.matrix();
    let joint = CMatrix::from_fn(joint_dim, joint_dim, |row, col| {
        let (m, n) = (row / n_dim, row % n_dim);
        let (mp, np) = (col / n_dim, col % n_dim);
        t[(m, mp)] * d[(n, np)]
    });
    JointState::new(DensityMatrix::new(joint)?, m_dim, n_dim)
}

/// Projective readout of the demon in its energy basis.
///
/// Outcome n has probability p_n = Tr[<n|sigma|n>_d] and leaves the target in
/// the renormalized conditional block. The ensemble's reference entropy is
/// the entropy of the input's target marginal, so its information gain is
/// measured against the pre-readout target.
pub fn project_onto_demon_basis(joint: &JointState) -> Result<OutcomeEnsemble, QcoreError> {
    let reference_entropy = joint.target_marginal()?.von_neumann_entropy();
    let (m_dim, n_dim) = (joint.target_dim(), joint.demon_dim());
    let matrix = joint.state().matrix();
    let mut outcomes = Vec::new();
    let mut lost = 0.0;
    for n in 0..n_dim {
        let probability: f64 = (0..m_dim).map(|m| matrix[(m * n_dim + n, m * n_dim + n)].re).sum();
        if probability < OUTCOME_THRESHOLD {
            lost += probability.max(0.0);
            continue;
        }
        let conditional = CMatrix::from_fn(m_dim, m_dim, |m, mp| {
            matrix[(m * n_dim + n, mp * n_dim + n)] / probability
        });
        outcomes.push(MeasurementOutcome {
            demon_index: n,
            probability,
            target_state: DensityMatrix::new(conditional)?,
        });
    }
    if lost > OUTCOME_THRESHOLD {
        return Err(QcoreError::ProbabilityMassLost { lost });
    }
    OutcomeEnsemble::new(outcomes, reference_entropy)
}

/// The projection-averaged state sum_n Pi_n sigma Pi_n, Pi_n = I (x) |n><n|.
///
/// Elements connecting distinct demon indices are erased; coherences within
/// each target block survive. This never lowers the entropy.
pub fn average_over_projection(joint: &JointState) -> Result<JointState, QcoreError> {
    let n_dim = joint.demon_dim();
    let matrix = joint.state().matrix();
    let dim = joint.dim();
    let averaged = CMatrix::from_fn(dim, dim, |row, col| {
        if row % n_dim == col % n_dim {
            matrix[(row, col)]
        } else {
            num_complex::Complex::new(0.0, 0.0)
        }
    });
    JointState::new(
        DensityMatrix::new(averaged)?,
        joint.target_dim(),
        joint.demon_dim(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use approx::assert_relative_eq;

    #[test]
    fn tensor_product_populations_are_products() {
        // diag(0.7, 0.3) (x) diag(0.6, 0.4) = diag(0.42, 0.28, 0.18, 0.12).
        let target = DensityMatrix::from_populations(&[0.7, 0.3]).unwrap();
        let demon = DensityMatrix::from_populations(&[0.6, 0.4]).unwrap();
        let joint = tensor_product(&target, &demon).unwrap();
        let populations = joint.state().populations();
        let expected = [0.42, 0.28, 0.18, 0.12];
        for (p, e) in populations.iter().zip(expected) {
            assert_relative_eq!(p, &e, epsilon = 1e-14);
        }
    }

    #[test]
    fn entropy_is_additive_over_products() {
        let target = DensityMatrix::from_populations(&[0.5, 0.25, 0.25]).unwrap();
        let demon = DensityMatrix::from_populations(&[0.9, 0.1]).unwrap();
        let joint = tensor_product(&target, &demon).unwrap();
        assert_relative_eq!(
            joint.von_neumann_entropy(),
            target.von_neumann_entropy() + demon.von_neumann_entropy(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn marginals_recover_factors() {
        let target = DensityMatrix::from_populations(&[0.7, 0.3]).unwrap();
        let amp = 0.5f64.sqrt();
        let demon =
            DensityMatrix::from_pure_state(&[C64::new(amp, 0.0), C64::new(0.0, amp)]).unwrap();
        let joint = tensor_product(&target, &demon).unwrap();

        let target_back = joint.target_marginal().unwrap();
        let demon_back = joint.demon_marginal().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let t = target_back.matrix()[(i, j)] - target.matrix()[(i, j)];
                let d = demon_back.matrix()[(i, j)] - demon.matrix()[(i, j)];
                assert!(t.norm() < 1e-13);
                assert!(d.norm() < 1e-13);
            }
        }
    }

    #[test]
    fn joint_dimension_is_capped() {
        let target = DensityMatrix::maximally_mixed(9).unwrap();
        let demon = DensityMatrix::maximally_mixed(9).unwrap();
        assert!(matches!(
            tensor_product(&target, &demon),
            Err(QcoreError::JointDimensionTooLarge { .. })
        ));
    }

    #[test]
    fn projection_of_product_state_reads_demon_populations() {
        let target = DensityMatrix::from_populations(&[0.6, 0.4]).unwrap();
        let demon = DensityMatrix::from_populations(&[0.7, 0.3]).unwrap();
        let joint = tensor_product(&target, &demon).unwrap();
        let ensemble = project_onto_demon_basis(&joint).unwrap();

        assert_eq!(ensemble.outcomes().len(), 2);
        assert_relative_eq!(ensemble.outcomes()[0].probability, 0.7, epsilon = 1e-13);
        assert_relative_eq!(ensemble.outcomes()[1].probability, 0.3, epsilon = 1e-13);
        // Product state: conditioning reveals nothing about the target.
        for outcome in ensemble.outcomes() {
            assert_relative_eq!(
                outcome.target_state.von_neumann_entropy(),
                target.von_neumann_entropy(),
                epsilon = 1e-12
            );
        }
        assert!(ensemble.information_gain().abs() < 1e-12);
    }

    #[test]
    fn projection_on_correlated_state_gains_information() {
        // Correlate with a controlled-NOT on the demon: (m, n) -> (m, n xor m)
        // at joint index 2m + n is the permutation [0, 1, 3, 2].
        let target = DensityMatrix::from_populations(&[0.6, 0.4]).unwrap();
        let demon = DensityMatrix::from_populations(&[1.0, 0.0]).unwrap();
        let joint = tensor_product(&target, &demon).unwrap();
        let cnot = UnitaryMatrix::from_permutation(&[0, 1, 3, 2]).unwrap();
        let correlated = joint.apply_unitary(&cnot).unwrap();

        let ensemble = project_onto_demon_basis(&correlated).unwrap();
        assert_eq!(ensemble.outcomes().len(), 2);
        assert_relative_eq!(ensemble.outcomes()[0].probability, 0.6, epsilon = 1e-13);
        // Each conditional target state is pure, so the full initial target
        // entropy is gained as information.
        assert_relative_eq!(
            ensemble.information_gain(),
            target.von_neumann_entropy(),
            epsilon = 1e-12
        );
        let h = -(0.6f64 * 0.6f64.ln() + 0.4 * 0.4f64.ln());
        assert_relative_eq!(ensemble.demon_record_entropy(), h, epsilon = 1e-12);
    }

    #[test]
    fn projection_drops_impossible_outcomes() {
        let target = DensityMatrix::from_populations(&[0.5, 0.5]).unwrap();
        let demon = DensityMatrix::from_populations(&[1.0, 0.0]).unwrap();
        let joint = tensor_product(&target, &demon).unwrap();
        let ensemble = project_onto_demon_basis(&joint).unwrap();
        assert_eq!(ensemble.outcomes().len(), 1);
        assert_eq!(ensemble.outcomes()[0].demon_index, 0);
    }

    #[test]
    fn averaging_erases_demon_coherence_and_fixes_entropy_split() {
        // Rotate a product state by a Haar unitary, then average. The result
        // must be block diagonal and its entropy must match the ensemble
        // decomposition H(p) + sum p_n S(rho_n).
        let target = DensityMatrix::from_populations(&[0.8, 0.2]).unwrap();
        let demon = DensityMatrix::from_populations(&[0.5, 0.5]).unwrap();
        let joint = tensor_product(&target, &demon).unwrap();
        let u = crate::unitary::haar_random_unitary(4, 11).unwrap();
        let rotated = joint.apply_unitary(&u).unwrap();

        let averaged = average_over_projection(&rotated).unwrap();
        let ensemble = project_onto_demon_basis(&rotated).unwrap();

        let decomposed = ensemble.demon_record_entropy() + ensemble.average_target_entropy();
        assert_relative_eq!(
            averaged.von_neumann_entropy(),
            decomposed,
            epsilon = 1e-10
        );

        // Elements connecting demon index 0 to demon index 1 are erased.
        let m = averaged.state().matrix();
        assert_eq!(m[(0, 1)], C64::new(0.0, 0.0));
        assert_eq!(m[(2, 3)], C64::new(0.0, 0.0));
        assert_eq!(m[(0, 3)], C64::new(0.0, 0.0));
        // Elements within one demon index survive averaging untouched.
        assert_eq!(m[(0, 2)], rotated.state().matrix()[(0, 2)]);

        // Averaging never lowers entropy (projection-average theorem).
        assert!(
            averaged.von_neumann_entropy() >= rotated.von_neumann_entropy() - 1e-10,
            "averaging lowered entropy"
        );
    }

    #[test]
    fn bell_state_averaging_raises_entropy_to_ln2() {
        // |phi+> = (|00> + |11>)/sqrt(2): averaging kills the off-diagonal
        // coherence and leaves diag(1/2, 0, 0, 1/2), entropy 0 -> ln 2.
        let amp = 0.5f64.sqrt();
        let bell = DensityMatrix::from_pure_state(&[
            C64::new(amp, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(amp, 0.0),
        ])
        .unwrap();
        let joint = JointState::new(bell, 2, 2).unwrap();
        assert!(joint.von_neumann_entropy().abs() < 1e-12);
        let averaged = average_over_projection(&joint).unwrap();
        assert_relative_eq!(
            averaged.von_neumann_entropy(),
            2.0f64.ln(),
            epsilon = 1e-12
        );
    }
}
