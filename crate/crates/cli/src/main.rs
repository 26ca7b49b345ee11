mod commands;
mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use integrability_core::io::{CsvTable, SCHEMA_VERSION};
use integrability_core::Error;
use serde_json::{json, Value};

/// Constructive integrability toolkit: operator algebra, symmetry checks,
/// transforms, spectral solvers, resonances and few-body dynamics.
#[derive(Debug, Parser)]
#[command(name = "integrability-lab", version)]
pub struct Cli {
    /// Directory for CSV and JSON artifacts (created if missing)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose, commute or Euler-substitute linear differential operators with
    /// rational coefficients, e.g. "(x^2)*d2 + x*d1 + 1"
    Diffop(commands::DiffopArgs),
    /// Build the monic linear ODE whose kernel is spanned by given functions
    /// (Wronskian construction) and test kernel membership
    Wronskian(commands::WronskianArgs),
    /// Exact conservation-law and symmetry checks for polynomial dynamical
    /// systems, and commutation of evolutionary flows u_t = K[u]
    Symmetry(commands::SymmetryArgs),
    /// Hodograph solution of u_t = 2uu_x with u(x, 0) = φ⁻¹(x), with
    /// breaking-time detection
    Shock(commands::ShockArgs),
    /// Linearize ψ_xy + αψ_x + βψ_y + ψ_xψ_y = 0 through θ = e^ψ and sample the
    /// general solution
    Thomas(commands::ThomasArgs),
    /// Cole–Hopf pair u = w_x/w on a periodic grid, with round-trip error
    Colehopf(commands::ColehopfArgs),
    /// Spectral solution of u_t = νu_xx on a periodic grid
    Heat(commands::HeatArgs),
    /// Burgers equation u_t = 2uu_x + εu_xx through the heat equation, checked
    /// against direct integration
    Burgers(commands::BurgersArgs),
    /// Dispersion relation ω(k) of a constant-coefficient linear PDE and its
    /// dispersive/dissipative classification
    Dispersion(commands::DispersionArgs),
    /// Finite-difference residual of a closed-form solution of KdV, NLS,
    /// heat or Burgers, with observed convergence order
    Residual(commands::ResidualArgs),
    /// Jost solution of the scattering problem for a square-well potential by
    /// Neumann iteration of the Volterra equation
    Jost(commands::JostArgs),
    /// Resonant triad amplitudes by RK4, invariant drift and the Jacobi
    /// elliptic closed form
    Triad(commands::TriadArgs),
    /// Resonant quartet amplitudes by RK4 with its three quadratic invariants
    Quartet(commands::QuartetArgs),
    /// Planar equal-mass three-body motion z̈_j = Σ z_jk f(|z_jk|²) with
    /// energy, angular momentum and inertia monitors
    Threebody(commands::ThreebodyArgs),
    /// Particles on a line with inverse-square repulsion: invariant drift and
    /// asymptotic velocity scattering
    Calogero(commands::CalogeroArgs),
    /// Run the acceptance criteria and print one pass/fail line each
    VerifyAll(commands::VerifyArgs),
    /// Execute a JSON run config {"command", "params", "out", "seed"}
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Path of the JSON run config
    pub config: PathBuf,
}

/// Result of a subcommand: a JSON report and an optional CSV table.
pub struct Output {
    pub name: &'static str,
    pub report: Value,
    pub csv: Option<CsvTable>,
    /// lines printed instead of the JSON report
    pub text: Option<String>,
    pub success: bool,
}

impl Output {
    pub fn new(name: &'static str, report: Value) -> Self {
        Self { name, report, csv: None, text: None, success: true }
    }

    pub fn with_csv(mut self, csv: CsvTable) -> Self {
        self.csv = Some(csv);
        self
    }
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn envelope(name: &str, report: Value) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "command": name, "result": report })
}

fn write_artifacts(dir: &Path, out: &Output) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let json = serde_json::to_string_pretty(&envelope(out.name, out.report.clone())).expect("reports serialize");
    let path = dir.join(format!("{}.json", out.name));
    std::fs::write(&path, json + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    if let Some(csv) = &out.csv {
        let path = dir.join(format!("{}.csv", out.name));
        std::fs::write(&path, csv.to_csv_string()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<Output, Failure> {
    let seed = cli.seed;
    let out_dir = cli.out.clone();
    let output = match cli.command {
        Command::Diffop(a) => commands::diffop(&a)?,
        Command::Wronskian(a) => commands::wronskian(&a)?,
        Command::Symmetry(a) => commands::symmetry(&a)?,
        Command::Shock(a) => commands::shock(&a)?,
        Command::Thomas(a) => commands::thomas(&a)?,
        Command::Colehopf(a) => commands::colehopf(&a)?,
        Command::Heat(a) => commands::heat(&a)?,
        Command::Burgers(a) => commands::burgers(&a)?,
        Command::Dispersion(a) => commands::dispersion(&a)?,
        Command::Residual(a) => commands::residual(&a)?,
        Command::Jost(a) => commands::jost(&a)?,
        Command::Triad(a) => commands::triad(&a)?,
        Command::Quartet(a) => commands::quartet(&a)?,
        Command::Threebody(a) => commands::threebody(&a)?,
        Command::Calogero(a) => commands::calogero(&a)?,
        Command::VerifyAll(a) => commands::verify_all(&a, seed)?,
        Command::Run(a) => return config::run(&a.config),
    };
    if let Some(dir) = out_dir {
        write_artifacts(&dir, &output)?;
    }
    Ok(output)
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "kind": kind, "module": "cli", "operation": "", "message": message, "values": [] })
}

pub fn report_failure(f: &Failure) -> ExitCode {
    let (code, report) = match f {
        Failure::Core(e) => {
            let code = if e.is_numerical() { 3 } else { 2 };
            (code, serde_json::to_value(e.report()).expect("error report serializes"))
        }
        Failure::Usage(msg) => (2, error_json("config", msg)),
        Failure::Io(msg) => (2, error_json("io", msg)),
    };
    emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializes")));
    ExitCode::from(code)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// Caps the rayon pool at `INTEGRABILITY_LAB_THREADS` when set.
fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("INTEGRABILITY_LAB_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Usage(format!("INTEGRABILITY_LAB_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    if let Err(f) = configure_threads() {
        return report_failure(&f);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(out) => {
            match &out.text {
                Some(t) => emit(t),
                None => emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&envelope(out.name, out.report.clone())).expect("serializes")
                )),
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => report_failure(&f),
    }
}
