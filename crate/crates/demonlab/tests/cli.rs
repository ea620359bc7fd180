//! End-to-end runs of the compiled binary: exit codes, CSV shape,
//! determinism, and the sample configs shipped in configs/.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_demonlab"))
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let path = tmp(name);
    fs::write(&path, body).unwrap();
    path
}

fn run_ok(output: &Output) -> String {
    assert_eq!(output.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    String::from_utf8_lossy(&output.stdout).into_owned()
}

const SWEEP: &str = "scenario = \"entropy_exchange_sweep\"\ntrials = 5\nseed = 3\n";

#[test]
fn run_emits_csv_and_summary() {
    let config = write_config("cli_sweep.toml", SWEEP);
    let out = tmp("cli_sweep.csv");
    let output = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    let stdout = run_ok(&output);
    assert!(stdout.contains("scenario: entropy_exchange_sweep"));
    assert!(stdout.contains("trials: 5"));
    assert!(stdout.contains("failures: 0"));
    assert!(stdout.contains("worst_slack_exchange:"));

    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "trial,seed,scenario,M,N,T_target,T_demon_reset,S_t,S_d,delta_I,delta_S_d,\
slack_exchange,W_d,E_mean_raised,quench_recovered,W_extracted,net_work_out,pass"
    );
    assert_eq!(lines.count(), 5);
    assert!(csv.contains("\n0,3,entropy_exchange_sweep,"));
}

#[test]
fn same_config_and_seed_is_byte_identical() {
    let config = write_config("cli_det.toml", SWEEP);
    let out_a = tmp("cli_det_a.csv");
    let out_b = tmp("cli_det_b.csv");
    for out in [&out_a, &out_b] {
        let output = bin()
            .args(["run", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .output()
            .unwrap();
        run_ok(&output);
    }
    assert_eq!(fs::read(&out_a).unwrap(), fs::read(&out_b).unwrap());
}

#[test]
fn seed_and_trials_overrides_apply() {
    let config = write_config("cli_override.toml", SWEEP);
    let out = tmp("cli_override.csv");
    let output = bin()
        .args(["run", "--seed", "90", "--trials", "2", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    run_ok(&output);
    let csv = fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("0,90,"));
    assert!(rows[1].starts_with("1,91,"));
}

#[test]
fn verbose_prints_one_line_per_trial() {
    let config = write_config("cli_verbose.toml", SWEEP);
    let out = tmp("cli_verbose.csv");
    let output = bin()
        .args(["run", "--verbose", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    let stdout = run_ok(&output);
    for trial in 0..5 {
        assert!(stdout.contains(&format!("trial {trial}: seed={} pass=true", 3 + trial)));
    }
}

#[test]
fn verify_reports_only_exit_status() {
    let config = write_config("cli_verify.toml", SWEEP);
    let output = bin().args(["verify", "--config"]).arg(&config).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&output.stdout).is_empty());
}

#[test]
fn config_problems_exit_2() {
    let cases = [
        ("cli_bad_key.toml", "scenario = \"full_cycle\"\nbogus = 1\n"),
        ("cli_bad_dims.toml", "scenario = \"full_cycle\"\ndims = [9, 9]\n"),
        ("cli_bad_name.toml", "scenario = \"warp_drive\"\n"),
        (
            "cli_warm_cold.toml",
            "scenario = \"cold_bath_cycle\"\nt_demon_reset = 1.0\n",
        ),
        ("cli_not_toml.toml", "{\"scenario\": \"full_cycle\"}\n"),
    ];
    for (name, body) in cases {
        let config = write_config(name, body);
        let output = bin().args(["verify", "--config"]).arg(&config).output().unwrap();
        assert_eq!(output.status.code(), Some(2), "case {name}");
        assert!(!output.stderr.is_empty(), "case {name}");
    }

    // unreadable config file is also a config error
    let output = bin()
        .args(["verify", "--config"])
        .arg(tmp("cli_missing.toml"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unwritable_output_path_exits_1() {
    let config = write_config("cli_io.toml", SWEEP);
    let out = tmp("no_such_dir").join("out.csv");
    let output = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn failed_assertions_exit_1_with_rows_kept() {
    // a barely-cold bath: the temperature edge is smaller than the driving
    // dissipation at this step count, so the profit check honestly fails
    let config = write_config(
        "cli_marginal.toml",
        r#"
scenario = "cold_bath_cycle"
t_target = 1.0
t_demon_reset = 0.9999
k_steps = 400
trials = 1
[measurement]
kind = "classical"
table = [[0, 0], [1, 0], [0, 1], [1, 1]]
"#,
    );
    let out = tmp("cli_marginal.csv");
    let output = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("failures: 1"));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.lines().nth(1).unwrap().ends_with(",false"));

    let verify = bin().args(["verify", "--config"]).arg(&config).output().unwrap();
    assert_eq!(verify.status.code(), Some(1));
}

#[test]
fn shipped_sample_configs_all_verify() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "toml") {
            continue;
        }
        seen += 1;
        let output = bin().args(["verify", "--config"]).arg(&path).output().unwrap();
        assert_eq!(
            output.status.code(),
            Some(0),
            "config {:?}: {}",
            path.file_name().unwrap(),
            String::from_utf8_lossy(&output.stderr)
        );
    }
    assert_eq!(seen, 5);
}
