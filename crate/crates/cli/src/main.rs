mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use config::{Args, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = RunConfig::from_args(args).and_then(|config| commands::run(&config));
    match result {
        Ok(report) => {
            print!("{}", report.output);
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("hitchin-mirror: {e}");
            ExitCode::from(2)
        }
    }
}
