//! `confdirac`: energies, shifts, scans and radial solves from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a checked claim did not hold,
//! 4 numerical failure.

mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confdirac::Spacing;

use table::Format;

#[derive(Debug, Parser)]
#[command(name = "confdirac", version, about = "Dirac levels with Coulomb plus tuned linear confinement")]
pub struct Cli {
    /// Print a complete flag set for every reference scenario and exit.
    #[arg(long)]
    seed_defaults: bool,

    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Particle mass (sets the energy unit).
    #[arg(long, global = true, default_value_t = 1.0, allow_hyphen_values = true)]
    pub mass: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 20_000)]
    pub points: usize,

    /// `log` or `linear`.
    #[arg(long, default_value = "log", value_parser = parse_spacing)]
    pub spacing: Spacing,

    /// Inner grid radius (default: chosen from the classical turning point).
    #[arg(long)]
    pub r_min: Option<f64>,

    /// Outer grid radius (default: where the evanescent tail has decayed).
    #[arg(long)]
    pub r_max: Option<f64>,
}

fn parse_spacing(s: &str) -> Result<Spacing, String> {
    s.parse::<Spacing>().map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dirac–Coulomb, Schrödinger and (for n = −κ) preserved energies.
    ///
    /// Columns: n, kappa, E_dirac, E_schrodinger, E_preserved (empty unless n = −κ).
    Energy(EnergyArgs),
    /// Closed-form first-order shift of each level and its three terms.
    ///
    /// Columns: n, kappa, bracket, total, term_linear, term_spin_orbit,
    /// term_kinetic, coefficient (total·m/(μλ)), preserved.
    Shift(ShiftArgs),
    /// Integer search for other levels whose first-order shift vanishes.
    ///
    /// Columns: n, kappa, N, physical. Exits 3 if anything beyond the
    /// κ = ±n, N = 1 family is found.
    Scan(ScanArgs),
    /// Numerical bound states of a potential family.
    ///
    /// Columns: family, n, kappa, nodes, energy, reference, reference_kind,
    /// difference, residual. For the bag the energy comes from shooting and
    /// the residual (and dumped wavefunction) from the rescaled closed-form
    /// state, whose derivatives are analytic.
    Solve(SolveArgs),
    /// The closed-form preserved state and its consistency checks.
    ///
    /// Columns: lambda, mu, kappa0, mass, b, s, a, alpha2, gamma, nu, energy,
    /// norm, gamma_dev_1..6, norm_defect, residual, coulomb_limit.
    Ansatz(AnsatzArgs),
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<i32>,
    /// Every state with n ≤ n_max (ignored when --n is given).
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1e-4, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub kappa0: i32,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 50)]
    pub n_max: u32,
    #[arg(long = "N-max", default_value_t = 10)]
    pub big_n_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// V₀ = −λ/r
    Coulomb,
    /// V₀ = −λ/r, V₁ = μr, V₂ = νr (ν fine-tuned unless given)
    CoulombLinear,
    /// V₀ = −λ/r, V₁ = A(r/r₀)^M, V₂ = −(E/m)V₁
    Bag,
    /// Schrödinger s-waves in 2μr (+ λ/r when --lambda is given)
    AntiparticleLinear,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Coulomb => "coulomb",
            Family::CoulombLinear => "coulomb-linear",
            Family::Bag => "bag",
            Family::AntiparticleLinear => "antiparticle-linear",
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Coulomb strength (default 0.5; antiparticle-linear: no Coulomb term).
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 1e-3, allow_hyphen_values = true)]
    pub mu: f64,
    /// Override the fine-tuned ν.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// Reference κ₀ for the fine-tuning and the bag.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub kappa0: i32,
    /// κ of the solved states (default κ₀).
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<i32>,
    /// Lowest principal quantum number (default |κ| or the lowest allowed).
    #[arg(long)]
    pub n: Option<u32>,
    /// Number of consecutive states.
    #[arg(long, default_value_t = 1)]
    pub states: u32,
    /// Bag strength A.
    #[arg(long = "A", default_value_t = 1.0, allow_hyphen_values = true)]
    pub a_coef: f64,
    /// Bag radius r₀ (default 5/(λm)).
    #[arg(long)]
    pub r0: Option<f64>,
    /// Bag power M.
    #[arg(long = "M", default_value_t = 20)]
    pub power: u32,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Write r, f, g (or r, u) of the last solved state to this file.
    #[arg(long)]
    pub dump_wavefunction: Option<PathBuf>,
    /// Exit with code 4 (after writing the table) if any residual exceeds this.
    #[arg(long, default_value_t = 1e-4)]
    pub max_residual: f64,
}

#[derive(Debug, Args)]
pub struct AnsatzArgs {
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1e-4, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub kappa0: i32,
    /// Multiply ν by (1 + detune) before computing the residual.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub detune: f64,
    #[arg(long, default_value_t = 20_000)]
    pub points: usize,
}

/// How a run ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Claim(String),
    Numeric(String),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 2,
            Failure::Claim(_) => 3,
            Failure::Numeric(_) | Failure::Io(_) => 4,
        }
    }
}

impl From<confdirac::Error> for Failure {
    fn from(e: confdirac::Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Domain(m) => write!(f, "invalid input: {m}"),
            Failure::Claim(m) => write!(f, "claim violated: {m}"),
            Failure::Numeric(m) => write!(f, "numerical failure: {m}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.seed_defaults {
        let mut out = io::stdout().lock();
        for line in commands::SEED_DEFAULTS {
            writeln!(out, "{line}")?;
        }
        return Ok(());
    }
    let Some(command) = cli.command else {
        return Err(Failure::Domain("no subcommand given; see --help".into()));
    };
    let common = &cli.common;
    if !(common.mass > 0.0) || !common.mass.is_finite() {
        return Err(Failure::Domain(format!("mass must be positive, got {}", common.mass)));
    }
    let outcome = match command {
        Command::Energy(a) => commands::energy(&a, common),
        Command::Shift(a) => commands::shift(&a, common),
        Command::Scan(a) => commands::scan(&a),
        Command::Solve(a) => commands::solve(&a, common),
        Command::Ansatz(a) => commands::ansatz(&a, common),
    }?;
    match &common.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            outcome.table.write(common.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            outcome.table.write(common.format, &mut w)?;
            w.flush()?;
        }
    }
    match outcome.status {
        Some(failure) => Err(failure),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("confdirac: {e}");
            ExitCode::from(e.code())
        }
    }
}
