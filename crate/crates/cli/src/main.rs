//! `asymscat`: scattering amplitudes, symmetry classification and device
//! design for nonlocal potentials on the line.
//!
//! Exit status: 0 success, 1 input error, 2 numerical failure, 3 failed
//! verification.

mod commands;
mod config;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::SolverArgs;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "asymscat", version, about = "Asymmetric scattering by nonlocal potentials")]
struct Cli {
    /// Write a run manifest (settings and file digests) here
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Amplitudes at one wavenumber
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long)]
        k: f64,
        /// Also solve the adjoint problem and report generalized unitarity
        #[arg(long)]
        adjoint: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Coefficients and amplitudes over a wavenumber grid, as CSV
    Sweep {
        #[arg(long)]
        kernel: PathBuf,
        /// kmin:kmax:n
        #[arg(long)]
        k_range: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Symmetry residuals, verdicts and allowed devices
    Classify {
        #[arg(long)]
        kernel: PathBuf,
        /// Relative residual below which a symmetry holds
        #[arg(long, default_value_t = asymscat::symmetry::DEFAULT_TOLERANCE)]
        symmetry_tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Design a polynomial kernel acting as an asymmetric device
    #[command(allow_negative_numbers = true)]
    Design {
        /// tra, tr, ta, trr or trt
        #[arg(long)]
        device: String,
        #[arg(long, default_value_t = 1.0)]
        k0: f64,
        /// none, viii or pt
        #[arg(long, default_value = "none")]
        constraint: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Kernel JSON destination
        #[arg(long)]
        out: PathBuf,
        /// Design summary JSON destination (stdout when absent)
        #[arg(long)]
        result: Option<PathBuf>,
        /// Verification sweep kmin:kmax:n
        #[arg(long, default_value = "0.8:1.2:41")]
        sweep: String,
        /// Verification sweep CSV destination
        #[arg(long)]
        sweep_out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Broadband one-way reflector α/(x - iε)², optionally tuned
    #[command(allow_negative_numbers = true)]
    BornDesign {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
        /// Tune α so that |R^l(kref)|² reaches the target
        #[arg(long)]
        tune: bool,
        #[arg(long, default_value_t = 1.0)]
        kref: f64,
        #[arg(long, default_value_t = 1.0)]
        target: f64,
        /// kmin:kmax:n
        #[arg(long)]
        sweep: Option<String>,
        /// Potential JSON destination
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        sweep_out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Unitarity, symmetry and amplitude-relation checks over a k grid
    Verify {
        #[arg(long)]
        kernel: PathBuf,
        /// kmin:kmax:n
        #[arg(long)]
        k_range: String,
        /// Symmetry the kernel is claimed to have (repeatable)
        #[arg(long)]
        claim: Vec<String>,
        #[arg(long, default_value_t = asymscat::symmetry::DEFAULT_TOLERANCE)]
        symmetry_tolerance: f64,
        /// Largest accepted unitarity or relation defect
        #[arg(long, default_value_t = 1e-8)]
        check_tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let args: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(cli, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("asymscat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
