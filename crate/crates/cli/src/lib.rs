//! Command-line front end: configuration, orchestration and result files.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{cmd_check, cmd_oracle_compare, cmd_solve, cmd_sweep};
pub use config::RunConfig;
pub use error::{CliError, ExitStatus};

use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Sweep,
    Check,
    OracleCompare,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub field: Option<PathBuf>,
}

/// Output directory: `--out`, then the config's `output_dir`, then `out`.
pub fn output_dir(inv: &Invocation, config: &RunConfig) -> PathBuf {
    inv.out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn dispatch(inv: &Invocation) -> Result<ExitStatus, CliError> {
    let config = RunConfig::load(&inv.config)?;
    let out = output_dir(inv, &config);
    match inv.command {
        Command::Solve => cmd_solve(&config, &out),
        Command::Sweep => cmd_sweep(&config, &out),
        Command::OracleCompare => cmd_oracle_compare(&config, &out),
        Command::Check => {
            let field: &Path = inv
                .field
                .as_deref()
                .ok_or_else(|| CliError::Config("`check` needs --field <csv>".into()))?;
            cmd_check(&config, &out, field)
        }
    }
}

/// Runs a command, reporting errors on stderr.
pub fn run(inv: &Invocation) -> ExitStatus {
    match dispatch(inv) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            e.status()
        }
    }
}
