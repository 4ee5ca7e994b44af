// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cvdec::acceptance;
use cvdec::scenario::{emit, run_scenario, RunOptions, Scenario, ScenarioError};

#[derive(Parser)]
#[command(name = "cvdec", version, about = "Decoherence of continuous-variable states in Gaussian baths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario config and write a CSV time series.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Add oracle and |Δ| columns for every quantity that has one.
        #[arg(long)]
        oracle: bool,
        /// Largest accepted |closed form − oracle|.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Run the acceptance suite.
    Selftest,
}

fn init_threads() {
    if let Some(n) = std::env::var("CVDEC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(config: PathBuf, out: PathBuf, oracle: bool, tolerance: f64) -> Result<(), ScenarioError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(ScenarioError::Config(format!("tolerance must be positive, got {tolerance}")));
    }
    let scenario = Scenario::from_path(&config)?;
    let table = run_scenario(&scenario, &RunOptions { oracle, tolerance })?;
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    emit(&table, &out)?;
    for (q, d) in &table.max_deviation {
        eprintln!("max |Δ| {q}: {d:.3e}");
    }
    table.check(tolerance)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    init_threads();
    match cli.command {
        Command::Run { config, out, oracle, tolerance } => match run(config, out, oracle, tolerance) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code())
            }
        },
        Command::Selftest => {
            let reports = acceptance::run_all();
            for r in &reports {
                println!("{r}");
            }
            if reports.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    }
}
