//! `confpot`: potentials, spectra, verification, fits and deconfinement
//! reports from the command line.
//!
//! Exit codes: 0 success, 1 a verification or reproduction check failed,
//! 2 usage, configuration or input error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Outcome;
use crate::config::Config;

#[derive(Debug, Parser)]
#[command(name = "confpot", version, about = "Conformally induced potentials on S1 x S3 and their spectra")]
pub struct Cli {
    /// TOML file overriding keys of the shipped defaults.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; standard output when omitted and no output directory is set.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Directory for relative output paths and default file names.
    #[arg(long, global = true, env = "CONFPOT_OUTPUT_DIR", value_name = "DIR")]
    pub output_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample an induced, closed-form, dipole or custom potential.
    Potential(PotentialArgs),
    /// Solve for the lowest levels and compare with the analytic spectrum.
    Solve(SolveArgs),
    /// Run the invariant suite and print one line per check.
    Verify(VerifyArgs),
    /// Fit M^2 = A (K+1)^2 - B/(K+1)^2 + C to level data.
    Fit(FitArgs),
    /// Tabulate the running coupling on the compactified spacetime.
    Coupling(CouplingArgs),
    /// Large-radius limits: temperature, Coulomb collapse, curved vs flat levels.
    Deconfine(DeconfineArgs),
    /// Recompute every published number and compare.
    ReproducePaper,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    /// trm, poschl-teller, scarf, mic-kepler, quadratic, free, dipole or custom.
    #[arg(long)]
    pub family: Option<String>,
    /// Poschl-Teller and Scarf strength.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Linear, quadratic and MIC-Kepler slope.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_k: Option<f64>,
    /// MIC-Kepler logarithmic weight.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Use (ell+1) instead of (K+1) in front of 2 f' cot chi.
    #[arg(long)]
    pub ell_cot_factor: bool,
    /// TOML list of profile terms for `--family custom`.
    #[arg(long, value_name = "FILE")]
    pub f_spec: Option<PathBuf>,
    /// Dipole coupling alpha_s N_c.
    #[arg(long, allow_negative_numbers = true)]
    pub alphas_nc: Option<f64>,
    /// Dipole constant lambda = lambda_S - lambda_N.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Number of sample points.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// Second-order finite differences.
    Fd,
    /// Dirichlet sine basis.
    Sine,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Interior grid points (finite differences) or basis size (sine).
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, value_enum, default_value_t = Basis::Fd)]
    pub basis: Basis,
    /// Also write the eigenfunctions as CSV (chi, psi_0, ...).
    #[arg(long, value_name = "FILE")]
    pub eigenvectors: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict the suite to one family.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Restrict the suite to one level K.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub grid_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitModeArg {
    Staged,
    Joint,
}

#[derive(Debug, Args)]
pub struct PhysicsArgs {
    #[arg(long)]
    pub lambda_qcd: Option<f64>,
    #[arg(long)]
    pub radius_fm: Option<f64>,
    #[arg(long)]
    pub alpha_s: Option<f64>,
    #[arg(long)]
    pub nc: Option<u32>,
    /// Free quark mass mu_q c^2 in MeV instead of Lambda / 2.
    #[arg(long)]
    pub mu_q: Option<f64>,
    #[arg(long)]
    pub nf: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Level data `label,mass_mev,K[,sigma_mev]`; synthetic levels when omitted.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Seed of the synthetic noise.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative noise on synthetic M^2; 0 gives exact levels.
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long, value_enum, default_value_t = FitModeArg::Staged)]
    pub mode: FitModeArg,
    #[command(flatten)]
    pub physics: PhysicsArgs,
}

#[derive(Debug, Args)]
pub struct CouplingArgs {
    #[arg(long)]
    pub nf: Option<u32>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Q^2 c^2 in MeV^2.
    #[arg(long)]
    pub q2: Option<f64>,
    #[arg(long)]
    pub lambda_qcd: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeconfineTable {
    /// Temperature for each radius of the sequence.
    Temperature,
    /// Curved against flat Coulomb potential at small distances.
    Collapse,
    /// Solver levels against flat Coulomb levels for each radius.
    Curved,
}

#[derive(Debug, Args)]
pub struct DeconfineArgs {
    #[arg(long, value_enum, default_value_t = DeconfineTable::Temperature)]
    pub table: DeconfineTable,
    /// Comma-separated radii in fm.
    #[arg(long, value_delimiter = ',')]
    pub r_sequence: Option<Vec<f64>>,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub grid_points: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Config::load(cli.config.as_deref()).and_then(|config| commands::run(&cli, &config));
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed(n)) => {
            eprintln!("confpot: {n} check(s) failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("confpot: {e:#}");
            ExitCode::from(2)
        }
    }
}
