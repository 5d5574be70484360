//! `rotcc`: compile, approximate, simulate and sweep rotation circuits.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::CompilePoly(a) => commands::compile_poly(a),
        Command::CompileLut(a) => commands::compile_lut(a),
        Command::Approximate(a) => commands::approximate(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Sweep(a) => commands::sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    /// 2 configuration, 3 compile guard, 4 domain.
    fn exit_code(&self) -> u8 {
        use rotcc::Error;
        fn core(e: &Error) -> u8 {
            match e {
                Error::EnumerationGuard { .. } | Error::QubitLimit { .. } => 3,
                Error::Domain { .. } | Error::Undefined { .. } | Error::AllExcluded => 4,
                Error::Stage { source, .. } => core(source),
                _ => 2,
            }
        }
        match self {
            CliError::Core(e) => core(e),
            CliError::Config(_) | CliError::Io { .. } => 2,
        }
    }
}
