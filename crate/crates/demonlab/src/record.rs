use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::runner::RunError;

/// Fixed column order for every scenario. Columns a scenario does not
/// produce stay empty rather than being dropped, so all CSVs line up.
pub const CSV_HEADER: &str = "trial,seed,scenario,M,N,T_target,T_demon_reset,S_t,S_d,\
delta_I,delta_S_d,slack_exchange,W_d,E_mean_raised,quench_recovered,W_extracted,net_work_out,pass";

const CSV_COLUMNS: usize = 18;

/// One seeded trial's numbers plus its verdict.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub scenario: &'static str,
    pub dim_t: Option<usize>,
    pub dim_d: Option<usize>,
    pub t_target: Option<f64>,
    pub t_demon_reset: Option<f64>,
    pub s_t: Option<f64>,
    pub s_d: Option<f64>,
    pub delta_i: Option<f64>,
    pub delta_s_d: Option<f64>,
    pub slack_exchange: Option<f64>,
    pub w_d: Option<f64>,
    pub e_mean_raised: Option<f64>,
    pub quench_recovered: Option<f64>,
    pub w_extracted: Option<f64>,
    pub net_work_out: Option<f64>,
    pub pass: bool,
}

impl TrialRecord {
    pub fn new(trial: usize, seed: u64, scenario: &'static str) -> Self {
        Self {
            trial,
            seed,
            scenario,
            dim_t: None,
            dim_d: None,
            t_target: None,
            t_demon_reset: None,
            s_t: None,
            s_d: None,
            delta_i: None,
            delta_s_d: None,
            slack_exchange: None,
            w_d: None,
            e_mean_raised: None,
            quench_recovered: None,
            w_extracted: None,
            net_work_out: None,
            pass: false,
        }
    }

    pub fn csv_row(&self) -> String {
        let fields: [String; CSV_COLUMNS] = [
            self.trial.to_string(),
            self.seed.to_string(),
            self.scenario.to_string(),
            fmt_opt_usize(self.dim_t),
            fmt_opt_usize(self.dim_d),
            fmt_opt(self.t_target),
            fmt_opt(self.t_demon_reset),
            fmt_opt(self.s_t),
            fmt_opt(self.s_d),
            fmt_opt(self.delta_i),
            fmt_opt(self.delta_s_d),
            fmt_opt(self.slack_exchange),
            fmt_opt(self.w_d),
            fmt_opt(self.e_mean_raised),
            fmt_opt(self.quench_recovered),
            fmt_opt(self.w_extracted),
            fmt_opt(self.net_work_out),
            self.pass.to_string(),
        ];
        fields.join(",")
    }
}

// 12 significant digits: round-trips through parse to better than 1e-11
// relative, and keeps reruns byte-identical.
fn fmt_opt(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.11e}")).unwrap_or_default()
}

fn fmt_opt_usize(value: Option<usize>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the full CSV (header plus one row per trial, in trial order).
pub fn emit_csv(records: &[TrialRecord], path: &Path) -> std::io::Result<()> {
    let mut out = String::with_capacity(128 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.csv_row());
        out.push('\n');
    }
    let mut file = fs::File::create(path)?;
    file.write_all(out.as_bytes())
}

/// Run report recomputed purely from an emitted CSV: no state is carried
/// over from the run that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub scenario: String,
    pub trials: usize,
    pub failures: usize,
    /// Minimum of the slack_exchange column (most negative is worst).
    pub worst_slack_exchange: Option<f64>,
    /// Maximum of the net_work_out column (most positive is worst).
    pub worst_net_work_out: Option<f64>,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {}", self.scenario)?;
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "failures: {}", self.failures)?;
        writeln!(f, "worst_slack_exchange: {}", fmt_summary(self.worst_slack_exchange))?;
        writeln!(f, "worst_net_work_out: {}", fmt_summary(self.worst_net_work_out))
    }
}

fn fmt_summary(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.11e}")).unwrap_or_else(|| "n/a".to_string())
}

/// Parses an emitted CSV back into a summary.
pub fn summarize_csv(path: &Path) -> Result<Summary, RunError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| RunError::Csv("empty file".to_string()))?;
    if header != CSV_HEADER {
        return Err(RunError::Csv(format!("unexpected header {header:?}")));
    }

    let mut summary = Summary {
        scenario: String::new(),
        trials: 0,
        failures: 0,
        worst_slack_exchange: None,
        worst_net_work_out: None,
    };
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != CSV_COLUMNS {
            return Err(RunError::Csv(format!(
                "row has {} fields, expected {CSV_COLUMNS}",
                fields.len()
            )));
        }
        summary.trials += 1;
        summary.scenario = fields[2].to_string();
        match fields[17] {
            "true" => {}
            "false" => summary.failures += 1,
            other => return Err(RunError::Csv(format!("bad pass flag {other:?}"))),
        }
        if !fields[11].is_empty() {
            let v: f64 = fields[11]
                .parse()
                .map_err(|_| RunError::Csv(format!("bad slack_exchange {:?}", fields[11])))?;
            summary.worst_slack_exchange =
                Some(summary.worst_slack_exchange.map_or(v, |w| w.min(v)));
        }
        if !fields[16].is_empty() {
            let v: f64 = fields[16]
                .parse()
                .map_err(|_| RunError::Csv(format!("bad net_work_out {:?}", fields[16])))?;
            summary.worst_net_work_out =
                Some(summary.worst_net_work_out.map_or(v, |w| w.max(v)));
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TrialRecord {
        let mut record = TrialRecord::new(3, 10, "full_cycle");
        record.dim_t = Some(2);
        record.dim_d = Some(2);
        record.t_target = Some(1.0);
        record.t_demon_reset = Some(1.0);
        record.slack_exchange = Some(-4.2e-12);
        record.net_work_out = Some(-5.3e-4);
        record.pass = true;
        record
    }

    #[test]
    fn row_has_the_full_column_count_with_gaps_kept() {
        let row = sample().csv_row();
        assert_eq!(row.split(',').count(), 18);
        assert!(row.starts_with("3,10,full_cycle,2,2,"));
        assert!(row.ends_with(",true"));
        // untouched columns stay empty
        assert!(row.contains(",,"));
    }

    #[test]
    fn formatted_numbers_round_trip_to_high_precision() {
        for v in [0.0, 1.0, -5.3e-4, std::f64::consts::LN_2, 1.0e-12, -273.15] {
            let text = fmt_opt(Some(v));
            let back: f64 = text.parse().unwrap();
            assert!((back - v).abs() <= 1e-11 * v.abs().max(1e-300));
        }
    }

    #[test]
    fn summary_is_recovered_from_the_emitted_file() {
        let mut warm = sample();
        warm.trial = 0;
        warm.seed = 7;
        let mut bad = sample();
        bad.trial = 1;
        bad.seed = 8;
        bad.pass = false;
        bad.slack_exchange = Some(-2.0e-3);
        bad.net_work_out = Some(1.7e-5);

        let path = std::env::temp_dir().join("demonlab_record_roundtrip.csv");
        emit_csv(&[warm, bad], &path).unwrap();
        let summary = summarize_csv(&path).unwrap();
        std::fs::remove_file(&path).ok();

        assert_eq!(summary.scenario, "full_cycle");
        assert_eq!(summary.trials, 2);
        assert_eq!(summary.failures, 1);
        assert!((summary.worst_slack_exchange.unwrap() + 2.0e-3).abs() < 1e-14);
        assert!((summary.worst_net_work_out.unwrap() - 1.7e-5).abs() < 1e-16);
    }

    #[test]
    fn summary_prints_labeled_lines() {
        let summary = Summary {
            scenario: "full_cycle".to_string(),
            trials: 2,
            failures: 0,
            worst_slack_exchange: Some(-4.2e-12),
            worst_net_work_out: None,
        };
        let text = summary.to_string();
        assert!(text.contains("scenario: full_cycle\n"));
        assert!(text.contains("failures: 0\n"));
        assert!(text.contains("worst_net_work_out: n/a"));
    }
}
