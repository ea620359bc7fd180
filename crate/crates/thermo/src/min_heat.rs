use crate::error::ThermoError;
use crate::gibbs::gibbs_state;
use crate::spectrum::Spectrum;

/// Entropy residual at which the temperature search stops.
const ENTROPY_TOL: f64 = 1e-12;

/// Iteration cap for both the bracket doubling and the bisection.
const MAX_ITERATIONS: usize = 200;

/// Minimum number of integration points for the T dS quadrature.
const MIN_GRID_POINTS: usize = 2_000;

/// Finds T_f >= T_i at which the Gibbs entropy has risen by delta_s.
///
/// The bracket is grown by doubling from T_i, then narrowed by bisection in
/// log-temperature until the entropy residual is within 1e-12. Gibbs entropy
/// is strictly increasing in T for a non-degenerate spectrum, so the root is
/// unique.
pub fn entropy_matching_temperature(
    spectrum: &Spectrum,
    t_initial: f64,
    delta_s: f64,
) -> Result<f64, ThermoError> {
    if delta_s < 0.0 {
        return Err(ThermoError::NegativeEntropyIncrease { value: delta_s });
    }
    let initial = gibbs_state(spectrum, t_initial)?;
    if delta_s == 0.0 {
        return Ok(t_initial);
    }
    let supremum = (spectrum.dim() as f64).ln() - initial.entropy();
    if delta_s > supremum - ENTROPY_TOL {
        return Err(ThermoError::UnreachableEntropy {
            requested: delta_s,
            supremum,
        });
    }
    let target = initial.entropy() + delta_s;

    let mut hi = t_initial;
    let mut grew = false;
    for _ in 0..MAX_ITERATIONS {
        hi *= 2.0;
        if gibbs_state(spectrum, hi)?.entropy() >= target {
            grew = true;
            break;
        }
    }
    if !grew {
        return Err(ThermoError::SearchDidNotConverge {
            iterations: MAX_ITERATIONS,
        });
    }

    let mut lo = hi / 2.0;
    for _ in 0..MAX_ITERATIONS {
        let mid = ((lo.ln() + hi.ln()) * 0.5).exp();
        let s_mid = gibbs_state(spectrum, mid)?.entropy();
        if (s_mid - target).abs() <= ENTROPY_TOL {
            return Ok(mid);
        }
        if s_mid < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(ThermoError::SearchDidNotConverge {
        iterations: MAX_ITERATIONS,
    })
}

/// Minimum heat that must flow into a system held at the spectrum's Gibbs
/// family in order to raise its entropy by delta_s, starting from T_i:
/// the integral of T dS from T_i to the matching T_f.
///
/// Along the Gibbs family dE = T dS, so this integral also equals the mean
/// energy difference of the endpoints; the quadrature route is kept because
/// callers cross-check one against the other. Since T >= T_i everywhere on
/// the path, the result is never below T_i * delta_s.
pub fn min_heat_for_entropy_increase(
    spectrum: &Spectrum,
    t_initial: f64,
    delta_s: f64,
) -> Result<f64, ThermoError> {
    if delta_s == 0.0 {
        gibbs_state(spectrum, t_initial)?;
        return Ok(0.0);
    }
    let t_final = entropy_matching_temperature(spectrum, t_initial, delta_s)?;

    let decades = (t_final / t_initial).log2().max(1.0);
    let points = ((MIN_GRID_POINTS as f64) * decades).ceil() as usize;
    let log_ratio = (t_final / t_initial).ln();

    let mut integral = 0.0;
    let mut prev_t = t_initial;
    let mut prev_s = gibbs_state(spectrum, t_initial)?.entropy();
    for j in 1..=points {
        let t = t_initial * (log_ratio * j as f64 / points as f64).exp();
        let s = gibbs_state(spectrum, t)?.entropy();
        integral += 0.5 * (prev_t + t) * (s - prev_s);
        prev_t = t;
        prev_s = s;
    }
    Ok(integral)
}
