use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::ThermoError;
use crate::gibbs::gibbs_state;
use crate::spectrum::Spectrum;

/// Attempts allowed per accepted sample before giving up.
const MAX_ATTEMPTS_PER_SAMPLE: usize = 100_000;

/// Random diagonal states with the same mean energy as the Gibbs state at
/// the given temperature, by rejection sampling.
///
/// A Gaussian step is projected onto the subspace orthogonal to both the
/// normalization vector and the level vector, so every proposal keeps the
/// trace and the mean energy exactly. Proposals that leave the probability
/// simplex (any negative population) are rejected and redrawn. The returned
/// vectors are population lists in basis order, Gibbs included as the mean
/// of the distribution.
///
/// For spectra where the energy constraint pins the state completely (for
/// example any two-level spectrum with distinct levels), the fluctuation
/// subspace is empty and every sample is the Gibbs state itself.
pub fn sample_populations_with_mean_energy(
    spectrum: &Spectrum,
    temperature: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>, ThermoError> {
    let gibbs = gibbs_state(spectrum, temperature)?;
    let center = gibbs.populations().to_vec();
    let dim = spectrum.dim();

    // Orthonormal basis of the constraint span {1, E}.
    let ones = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut energy_dir: Vec<f64> = spectrum.levels().to_vec();
    let e_dot_ones: f64 = energy_dir.iter().zip(&ones).map(|(e, u)| e * u).sum();
    for (e, u) in energy_dir.iter_mut().zip(&ones) {
        *e -= e_dot_ones * u;
    }
    let e_norm: f64 = energy_dir.iter().map(|e| e * e).sum::<f64>().sqrt();
    let energy_constraint = if e_norm > 1e-12 {
        Some(energy_dir.iter().map(|e| e / e_norm).collect::<Vec<f64>>())
    } else {
        None
    };

    let scale = center.iter().cloned().fold(f64::INFINITY, f64::min) / (dim as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(count);

    for _ in 0..count {
        let mut accepted = None;
        for _ in 0..MAX_ATTEMPTS_PER_SAMPLE {
            let mut step: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let along_ones: f64 = step.iter().zip(&ones).map(|(g, u)| g * u).sum();
            for (g, u) in step.iter_mut().zip(&ones) {
                *g -= along_ones * u;
            }
            if let Some(v) = &energy_constraint {
                let along_energy: f64 = step.iter().zip(v).map(|(g, w)| g * w).sum();
                for (g, w) in step.iter_mut().zip(v) {
                    *g -= along_energy * w;
                }
            }
            let proposal: Vec<f64> = center
                .iter()
                .zip(&step)
                .map(|(c, g)| c + scale * g)
                .collect();
            if proposal.iter().all(|&p| p >= 0.0) {
                accepted = Some(proposal);
                break;
            }
        }
        match accepted {
            Some(p) => samples.push(p),
            None => {
                return Err(ThermoError::SamplingFailed {
                    attempts: MAX_ATTEMPTS_PER_SAMPLE,
                })
            }
        }
    }
    Ok(samples)
}
