use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;

use config::{Defaults, SweepArgs};

/// High-frequency isola of the Stokes wave: golden coefficients, theory curves
/// and a brute-force Floquet oracle.
#[derive(Debug, Parser)]
#[command(name = "isola", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every ledger term and derived constant against its reference value
    Verify {
        #[command(flatten)]
        args: SweepArgs,
        /// Add DELTA to the computed value of row NAME
        #[arg(long, hide = true, value_name = "NAME=DELTA")]
        inject: Vec<String>,
    },
    /// Dump ledger terms, reduced-matrix jets and derived constants
    Coeffs(SweepArgs),
    /// Theory and oracle eigenvalue curves across the isola, per ε
    Isola(SweepArgs),
    /// Full discretized spectrum at one (μ, ε)
    Spectrum(SweepArgs),
    /// Tracked pair against the truncation N
    Convergence(SweepArgs),
}

/// Bad flags, config or paths (exit 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// `verify` found this many failing rows (exit 1).
#[derive(Debug)]
pub struct Mismatch(pub usize);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} verification rows failed", self.0)
    }
}

impl std::error::Error for Mismatch {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use isola_core::Error as E;
    for cause in err.chain() {
        if cause.is::<Mismatch>() {
            return 1;
        }
        if cause.is::<UsageError>() || cause.is::<std::io::Error>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::StokesOrder(_)
                | E::CollisionIndex(_)
                | E::Truncation(_)
                | E::InvalidInput(_) => 2,
                E::DegenerateFrequency(_)
                | E::UnsupportedResidue { .. }
                | E::NonDegenerate(_)
                | E::FlatTrace
                | E::Eigensolve
                | E::Tracking { .. } => 3,
            };
        }
    }
    2
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let sweep = |eps: f64, trunc: &[usize]| Defaults {
        eps: vec![eps],
        trunc: trunc.to_vec(),
    };
    match cli.command {
        Command::Verify { args, inject } => {
            commands::verify(&args.resolve(sweep(0.08, &[32]))?, &inject)
        }
        Command::Coeffs(args) => commands::coeffs(&args.resolve(sweep(0.08, &[32]))?),
        Command::Isola(args) => commands::isola(&args.resolve(sweep(0.08, &[32]))?),
        Command::Spectrum(args) => commands::spectrum_cmd(&args.resolve(sweep(0.0, &[32]))?),
        Command::Convergence(args) => {
            commands::convergence(&args.resolve(sweep(0.05, &[16, 32, 64]))?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = exit_code(&err);
            if code != 1 {
                eprintln!("error: {err:#}");
            } else {
                eprintln!("{err}");
            }
            ExitCode::from(code)
        }
    }
}
