mod args;
mod commands;
mod figures;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{merge, Cli, Command};
use summa_core::SummaError;

#[derive(Debug)]
pub enum CliError {
    /// bad flag value; exit 2
    Usage { flag: String, message: String },
    /// exit 1
    Compute(SummaError),
    Io(String),
}

impl CliError {
    pub fn usage(flag: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Usage {
            flag: flag.into(),
            message: message.into(),
        }
    }
}

impl From<SummaError> for CliError {
    fn from(e: SummaError) -> Self {
        CliError::Compute(e)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SUMMA_THREADS") else { return Ok(()) };
    let n: usize = match v.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(CliError::usage("SUMMA_THREADS", format!("must be a positive integer (got '{v}')"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Io(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Kernel(a) => {
            let path = a.common.config.clone();
            commands::kernel(&merge(a, path.as_ref())?.common)?
        }
        Command::Means(a) => {
            let path = a.common.config.clone();
            commands::means(&merge(a, path.as_ref())?)?
        }
        Command::Maxop(a) => {
            let path = a.common.config.clone();
            commands::maxop(&merge(a, path.as_ref())?)?
        }
        Command::Norm(a) => {
            let path = a.common.config.clone();
            commands::norm(&merge(a, path.as_ref())?)?
        }
        Command::Verify(a) => {
            let path = a.config.clone();
            return commands::verify(&merge(a, path.as_ref())?);
        }
        Command::Figure(a) => {
            let path = a.config.clone();
            figures::figure(&merge(a, path.as_ref())?)?
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage { flag, message }) => {
            eprintln!("error: {flag}: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
