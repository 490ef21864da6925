use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mixdiv::{run_job, Command, JobSpec};
use mixdiv_core::audit::Tolerances;

/// Classical, mixed and i-th mixed f-divergences, inequality audits and
/// mixed affine surface areas. Writes one JSON report; exits 0 on success,
/// 1 on input or validation errors, 2 when an audit finds a violation.
#[derive(Debug, Parser)]
#[command(name = "mixdiv", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON or CSV measure data.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Generator spec as JSON, e.g. '{"kind":"power","alpha":0.5}'. Repeatable.
    #[arg(long = "f")]
    generators: Vec<String>,
    /// Use power(alpha) for pairs without a generator.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Index of the i-th mixed divergence. Repeatable.
    #[arg(long, allow_hyphen_values = true)]
    i: Vec<f64>,
    /// Order-change index for `mixed`.
    #[arg(long)]
    k: Option<usize>,
    /// Exponent m of the Alexandrov–Fenchel check for `audit --input`.
    #[arg(long)]
    m: Option<usize>,
    /// Ambient exponent n for `ith`.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = Tolerances::default().ineq)]
    tol_ineq: f64,
    #[arg(long, default_value_t = Tolerances::default().eq)]
    tol_eq: f64,
    #[arg(long, default_value_t = Tolerances::default().prop)]
    tol_prop: f64,
    /// Replace zero densities by this value (renormalizing probability densities).
    #[arg(long)]
    epsilon_floor: Option<f64>,
    /// Instances per audit family.
    #[arg(long)]
    count: Option<usize>,
    /// Ellipsoid spec as JSON, e.g. '{"semi_axes":[1,2,3]}'. Repeatable.
    #[arg(long)]
    body: Vec<String>,
    /// Sphere quadrature resolution.
    #[arg(long)]
    resolution: Option<usize>,
}

impl From<Cli> for JobSpec {
    fn from(c: Cli) -> Self {
        JobSpec {
            command: c.command,
            input: c.input,
            output: c.output,
            generators: c.generators,
            alpha: c.alpha,
            i: c.i,
            k: c.k,
            m: c.m,
            n: c.n,
            seed: c.seed,
            tolerances: Tolerances { ineq: c.tol_ineq, eq: c.tol_eq, prop: c.tol_prop },
            epsilon_floor: c.epsilon_floor,
            count: c.count,
            bodies: c.body,
            resolution: c.resolution,
        }
    }
}

fn main() -> ExitCode {
    let spec = JobSpec::from(Cli::parse());
    let code = run_job(&spec);
    if code == mixdiv::EXIT_ERROR {
        eprintln!("mixdiv: job failed; see the report for details");
    }
    ExitCode::from(code as u8)
}
