use crate::error::ThermoError;

/// Energy levels of a diagonal Hamiltonian, in basis order.
///
/// Levels are stored with the minimum subtracted, so the ground energy is
/// always exactly 0. The overall offset is pure gauge: it cancels in every
/// work and heat ledger, and fixing it makes ledgers comparable across runs.
/// Basis order is preserved (levels are not sorted), because states carry
/// their populations in the same basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    levels: Vec<f64>,
}

impl Spectrum {
    pub fn new(levels: Vec<f64>) -> Result<Self, ThermoError> {
        if levels.is_empty() {
            return Err(ThermoError::EmptySpectrum);
        }
        for &level in &levels {
            if !level.is_finite() {
                return Err(ThermoError::NonFiniteLevel { value: level });
            }
        }
        let min = levels.iter().cloned().fold(f64::INFINITY, f64::min);
        let levels = levels.iter().map(|&e| e - min).collect();
        Ok(Self { levels })
    }

    /// All levels at zero: the resting configuration of the demon's memory.
    pub fn degenerate(dim: usize) -> Result<Self, ThermoError> {
        if dim == 0 {
            return Err(ThermoError::EmptySpectrum);
        }
        Ok(Self {
            levels: vec![0.0; dim],
        })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn max_level(&self) -> f64 {
        self.levels.iter().cloned().fold(0.0, f64::max)
    }

    pub fn is_degenerate(&self) -> bool {
        self.max_level() == 0.0
    }
}
