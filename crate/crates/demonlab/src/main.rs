use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use demonlab::config::ConfigError;
use demonlab::{emit_csv, parse_config, run_scenario, summarize_csv, RunError};

#[derive(Parser)]
#[command(name = "demonlab", about = "Seeded batch driver for the measurement-cycle scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario, write its CSV, and print a summary
    Run {
        /// TOML scenario config
        #[arg(long)]
        config: PathBuf,
        /// Override the config's base seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's trial count
        #[arg(long)]
        trials: Option<usize>,
        /// Output CSV path
        #[arg(long, default_value = "out.csv")]
        out: PathBuf,
        /// Print one line per trial while running
        #[arg(long)]
        verbose: bool,
    },
    /// Run a scenario and report only through the exit status
    Verify {
        /// TOML scenario config
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            config,
            seed,
            trials,
            out,
            verbose,
        } => cmd_run(&config, seed, trials, &out, verbose),
        Command::Verify { config } => cmd_verify(&config),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn load_config(path: &Path) -> Result<demonlab::ScenarioConfig, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        RunError::Config(ConfigError::Unreadable(format!("{}: {e}", path.display())))
    })?;
    Ok(parse_config(&text)?)
}

fn cmd_run(
    config_path: &Path,
    seed: Option<u64>,
    trials: Option<usize>,
    out: &Path,
    verbose: bool,
) -> Result<ExitCode, RunError> {
    let mut config = load_config(config_path)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if let Some(trials) = trials {
        if trials == 0 {
            return Err(RunError::Config(ConfigError::ZeroTrials));
        }
        config.trials = trials;
    }

    let records = run_scenario(&config)?;
    if verbose {
        for record in &records {
            println!(
                "trial {}: seed={} pass={}",
                record.trial, record.seed, record.pass
            );
        }
    }
    emit_csv(&records, out)?;

    // the verdict is re-read from the file just written, not carried over
    let summary = summarize_csv(out)?;
    print!("{summary}");
    println!("csv: {}", out.display());
    Ok(if summary.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(config_path: &Path) -> Result<ExitCode, RunError> {
    let config = load_config(config_path)?;
    let records = run_scenario(&config)?;
    let all_pass = records.iter().all(|r| r.pass);
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
