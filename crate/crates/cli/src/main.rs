use alphaconvex_cli::{run, Command, Invocation};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Alpha-convex envelopes of boundary data on strictly convex planar domains.
#[derive(Parser)]
#[command(name = "alphaconvex", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve for a single alpha; writes field.csv and summary.json.
    Solve(Common),
    /// Solve along an ascending alpha list; writes per-alpha runs and bridge.json.
    Sweep(Common),
    /// Certify a field CSV against the configured grid; writes check.json.
    Check(Common),
    /// Compare an alpha = 0 or alpha = 1 solve with the sampled envelope.
    OracleCompare(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config's output_dir).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Field CSV to certify (check only).
    #[arg(long)]
    field: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Solve(a) => (Command::Solve, a),
        Cmd::Sweep(a) => (Command::Sweep, a),
        Cmd::Check(a) => (Command::Check, a),
        Cmd::OracleCompare(a) => (Command::OracleCompare, a),
    };
    let status = run(&Invocation {
        command,
        config: args.config,
        out: args.out,
        field: args.field,
    });
    ExitCode::from(status.code() as u8)
}
