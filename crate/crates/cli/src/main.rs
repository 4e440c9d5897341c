//! `ptsturm` — command-line front end for the PT-symmetric lattice
//! bound-state pipeline: secular polynomials, Sturmian factorizations and
//! J-fractions, bound-state spectra with wavefunctions, parameter-domain
//! maps, and brute-force verification.

mod commands;
mod params;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{domain, secular, spectrum, sturmian, verify};

#[derive(Parser)]
#[command(name = "ptsturm", version, about = "Exact bound-state machinery for a PT-symmetric discrete Schrödinger chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the secular polynomial in t
    Secular(secular::Args),
    /// Sturmian factorization f = N/D, partial fractions, J-fraction
    Sturmian(sturmian::Args),
    /// Bound states below the continuum (optionally with wavefunctions)
    Spectrum(spectrum::Args),
    /// Scan a two-parameter plane for bound-state counts and boundaries
    Domain(domain::Args),
    /// Golden, property and oracle verification
    Verify(verify::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Secular(args) => secular::run(args),
        Command::Sturmian(args) => sturmian::run(args),
        Command::Spectrum(args) => spectrum::run(args),
        Command::Domain(args) => domain::run(args),
        Command::Verify(args) => verify::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.to_json());
            ExitCode::FAILURE
        }
    }
}
