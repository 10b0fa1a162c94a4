// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use hankel_cli::{precision_cap_from_env, run, run_summary, sweep, sweep_table, Cli, Command, Status};

fn fail(status: Status, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("hankel-eig: {msg}");
    ExitCode::from(status.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(Status::InvalidConfig.code());
        }
    };
    let cap = match precision_cap_from_env() {
        Ok(c) => c,
        Err(e) => return fail(Status::InvalidConfig, e),
    };
    match cli.command {
        Command::Run(args) => {
            let config = match args.config() {
                Ok(c) => c,
                Err(e) => return fail(Status::InvalidConfig, e),
            };
            match run(&config, cap) {
                Ok((result, report)) => {
                    print!("{}", run_summary(&result, &report));
                    ExitCode::from(Status::of_result(&result).code())
                }
                Err(e) => fail(Status::of_error(&e), e),
            }
        }
        Command::Sweep(args) => {
            let configs = match args.configs() {
                Ok(c) => c,
                Err(e) => return fail(Status::InvalidConfig, e),
            };
            let rows = sweep(&configs, cap);
            print!("{}", sweep_table(&rows));
            if let Some(path) = &args.out {
                let reports: Vec<_> = rows.iter().filter_map(|r| r.outcome.as_ref().ok()).collect();
                let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
                if let Err(e) = std::fs::write(path, json + "\n") {
                    return fail(Status::Failure, format!("{}: {e}", path.display()));
                }
            }
            if rows.iter().all(|r| r.outcome.is_ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(Status::Failure.code())
            }
        }
    }
}
