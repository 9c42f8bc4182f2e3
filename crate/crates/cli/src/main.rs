//! `qnet`: spectra, sweeps and propagation for Ising-type node networks.
//!
//! Data goes to standard output (or `--output`), diagnostics to standard
//! error; the exit status is non-zero on any error.

mod config;
mod run;
mod table;

use std::io::Write;
use std::process::ExitCode;

use config::{parse_args, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error(transparent)]
    Core(#[from] qnet_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

fn render(cfg: &RunConfig) -> Result<String, CliError> {
    let table = run::execute(&cfg.job)?;
    Ok(match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    })
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(CliError::Clap(e)) => {
            // --help and --version print to stdout and succeed.
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match render(&cfg).and_then(|text| emit(&cfg, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
