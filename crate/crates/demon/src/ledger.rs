use crate::error::DemonError;

/// Tolerance for the per-stage first law. Every stage's work and heat are
/// accumulated from the same discrete path as its energy change, so the
/// residual is pure floating-point noise.
const BALANCE_TOL: f64 = 1e-9;

/// One stage of the cycle, as the ledger sees it.
///
/// Sign conventions: work_in and work_out are both nonnegative (energy the
/// agent pushes in, energy the agent pulls out); heat_to_bath is signed,
/// positive when the system sheds heat to the bath. Entropies are the
/// demon's and the target's at the end of the stage; once the target is an
/// outcome ensemble, its entry is the probability-weighted average.
#[derive(Debug, Clone)]
pub struct StageRecord {
    pub stage: &'static str,
    pub work_in: f64,
    pub work_out: f64,
    pub heat_to_bath: f64,
    pub s_demon: f64,
    pub s_target: f64,
}

/// Builds a stage record and enforces the first law against the stage's
/// actual energy change.
pub(crate) fn checked_record(
    stage: &'static str,
    work_in: f64,
    work_out: f64,
    heat_to_bath: f64,
    delta_energy: f64,
    s_demon: f64,
    s_target: f64,
) -> Result<StageRecord, DemonError> {
    let residual = delta_energy - (work_in - work_out - heat_to_bath);
    if residual.abs() > BALANCE_TOL {
        return Err(DemonError::EnergyImbalance { stage, residual });
    }
    Ok(StageRecord {
        stage,
        work_in,
        work_out,
        heat_to_bath,
        s_demon,
        s_target,
    })
}

/// Complete account of one cycle.
///
/// net_work_out = quench_recovered + w_extracted - w_d. At equal
/// temperatures this never exceeds zero (up to float noise): the extraction
/// budget is exactly the work spent on the reset.
#[derive(Debug, Clone)]
pub struct CycleLedger {
    pub stages: Vec<StageRecord>,
    /// Work spent raising the demon's levels during reset.
    pub w_d: f64,
    /// Demon mean energy at the top of the raise.
    pub e_mean_raised: f64,
    /// Work recovered when the raised levels are dropped back to zero.
    pub quench_recovered: f64,
    /// Net work the measurement-feedback pair pulls out of the target.
    pub w_extracted: f64,
    pub net_work_out: f64,
}

impl CycleLedger {
    pub fn total_heat_to_bath(&self) -> f64 {
        self.stages.iter().map(|s| s.heat_to_bath).sum()
    }

    pub fn stage(&self, name: &str) -> Option<&StageRecord> {
        self.stages.iter().find(|s| s.stage == name)
    }
}
