// SPDX-License-Identifier: Apache-2.0

//! Batch front end: argument handling, run reports and sweep tables.

mod args;
mod config;
mod exit;
mod summary;

use std::fs;
use std::path::Path;

use hankel_core::{solve, Error, RunReport, RunResult};

pub use args::{Cli, Command, RunArgs, SweepArgs};
pub use config::{precision_cap_from_env, RunConfig, PRECISION_CAP_ENV};
pub use exit::Status;
pub use summary::{run_summary, sweep_table, SweepRow};

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

/// Solve one configuration and write the requested artifacts.
pub fn run(config: &RunConfig, precision_cap: u32) -> Result<(RunResult, RunReport), Error> {
    config.validate()?;
    let result = solve(&config.solve_config(precision_cap))?;
    let report = RunReport::from_result(&result)?;
    if let Some(path) = &config.out {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        write_file(path, &(json + "\n"))?;
    }
    if let Some(path) = &config.dump_matrix {
        write_file(path, &result.matrix.to_dump())?;
    }
    Ok((result, report))
}

/// Run every configuration in order; failures are recorded and skipped.
pub fn sweep(configs: &[RunConfig], precision_cap: u32) -> Vec<SweepRow> {
    configs
        .iter()
        .map(|c| SweepRow {
            n: c.n,
            beta: c.beta.to_string(),
            workers: c.workers,
            outcome: run(c, precision_cap)
                .map(|(_, report)| report)
                .map_err(|e| e.to_string()),
        })
        .collect()
}
