//! Job execution: one command, one JSON report, one exit code.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use mixdiv_core::audit::{
    audit_suite, check_alexandrov_fenchel, check_concave_upper, check_jensen_bound, AuditConfig, AuditReport,
    Tolerances,
};
use mixdiv_core::divergence::{f_dissimilarity, f_divergence, ith_mixed, mixed_divergence, mixed_divergence_k};
use mixdiv_core::geometry::{
    ith_mixed_affine_surface_area, mixed_affine_surface_area, sphere_grid, DEFAULT_RESOLUTION,
};
use mixdiv_core::{Generator, IthMixedSpec, MeasureVector, PairTriple};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::io::{load_input, LoadedInput};
use crate::report::{nums, AuditRecord, InputEcho, Num, ToleranceRecord};
use crate::spec::{parse_body, parse_generator, parse_generator_str, parse_multivariate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// f-divergence of every pair.
    Compute,
    /// Mixed divergence of all pairs and its order-changed row.
    Mixed,
    /// i-th mixed divergence of the first two pairs over an index grid.
    Ith,
    /// Multivariate f-dissimilarity of p1, q1, …, pn, qn.
    Dissimilarity,
    /// Randomized audit suite, or audits of the given input.
    Audit,
    /// Mixed affine surface areas of ellipsoids.
    Geometry,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    /// JSON generator specs.
    pub generators: Vec<String>,
    pub alpha: Option<f64>,
    pub i: Vec<f64>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<u32>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub epsilon_floor: Option<f64>,
    /// Instances per audit family.
    pub count: Option<usize>,
    /// JSON body specs.
    pub bodies: Vec<String>,
    pub resolution: Option<usize>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input: None,
            output: None,
            generators: Vec::new(),
            alpha: None,
            i: Vec::new(),
            k: None,
            m: None,
            n: None,
            seed: 42,
            tolerances: Tolerances::default(),
            epsilon_floor: None,
            count: None,
            bodies: Vec::new(),
            resolution: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(CliError::Job(format!("--{name} must be finite")))
            }
        };
        if let Some(a) = self.alpha {
            finite("alpha", a)?;
        }
        for &i in &self.i {
            finite("i", i)?;
        }
        let t = self.tolerances;
        for (name, v) in [("tol-ineq", t.ineq), ("tol-eq", t.eq), ("tol-prop", t.prop)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(CliError::Job(format!("--{name} must be a non-negative number")));
            }
        }
        if self.n == Some(0) {
            return Err(CliError::Job("--n must be at least 1".into()));
        }
        let needs_input =
            matches!(self.command, Command::Compute | Command::Mixed | Command::Ith | Command::Dissimilarity);
        if needs_input && self.input.is_none() {
            return Err(CliError::Job(format!("{} requires --input", self.command_name())));
        }
        match self.command {
            Command::Ith if self.i.is_empty() => Err(CliError::Job("ith requires at least one --i".into())),
            Command::Dissimilarity if self.generators.len() != 1 => {
                Err(CliError::Job("dissimilarity requires exactly one --f".into()))
            }
            Command::Geometry if self.bodies.is_empty() => Err(CliError::Job("geometry requires --body".into())),
            _ => Ok(()),
        }
    }

    fn command_name(&self) -> &'static str {
        match self.command {
            Command::Compute => "compute",
            Command::Mixed => "mixed",
            Command::Ith => "ith",
            Command::Dissimilarity => "dissimilarity",
            Command::Audit => "audit",
            Command::Geometry => "geometry",
        }
    }

    fn audit_config(&self) -> AuditConfig {
        let mut config = match self.count {
            Some(c) => AuditConfig::uniform(self.seed, c),
            None => AuditConfig { seed: self.seed, ..AuditConfig::default() },
        };
        config.tolerances = self.tolerances;
        config
    }
}

#[derive(Debug, Serialize)]
struct Parameters {
    input: Option<String>,
    generators: Vec<Value>,
    alpha: Option<Num>,
    i: Vec<Num>,
    k: Option<usize>,
    m: Option<usize>,
    n: Option<u32>,
    seed: u64,
    epsilon_floor: Option<Num>,
    count: Option<usize>,
    bodies: Vec<Value>,
    resolution: Option<usize>,
}

impl From<&JobSpec> for Parameters {
    fn from(s: &JobSpec) -> Self {
        let json = |t: &String| serde_json::from_str(t).unwrap_or_else(|_| Value::String(t.clone()));
        Self {
            input: s.input.as_ref().map(|p| p.display().to_string()),
            generators: s.generators.iter().map(json).collect(),
            alpha: s.alpha.map(Num),
            i: nums(&s.i),
            k: s.k,
            m: s.m,
            n: s.n,
            seed: s.seed,
            epsilon_floor: s.epsilon_floor.map(Num),
            count: s.count,
            bodies: s.bodies.iter().map(json).collect(),
            resolution: s.resolution,
        }
    }
}

#[derive(Debug, Serialize)]
struct Report<R: Serialize> {
    command: Command,
    status: &'static str,
    exit_code: i32,
    error: Option<String>,
    parameters: Parameters,
    tolerances: ToleranceRecord,
    input: Option<InputEcho>,
    warnings: Vec<String>,
    results: Option<R>,
}

/// Result of [`execute`]: the exit code and the rendered report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobOutcome {
    pub exit_code: i32,
    pub report: String,
}

struct Computed<R> {
    results: R,
    violation: bool,
}

fn render<R: Serialize>(
    spec: &JobSpec,
    input: Option<&LoadedInput>,
    outcome: Result<Computed<R>, CliError>,
) -> JobOutcome {
    let (status, exit_code, error, results) = match outcome {
        Ok(c) if c.violation => ("violation", EXIT_VIOLATION, None, Some(c.results)),
        Ok(c) => ("ok", EXIT_OK, None, Some(c.results)),
        Err(e) => ("error", EXIT_ERROR, Some(e.to_string()), None),
    };
    let report = Report {
        command: spec.command,
        status,
        exit_code,
        error,
        parameters: spec.into(),
        tolerances: spec.tolerances.into(),
        input: input.map(InputEcho::from),
        warnings: input.map(|i| i.warnings.clone()).unwrap_or_default(),
        results,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serialization");
    text.push('\n');
    JobOutcome { exit_code, report: text }
}

/// Runs the job and renders its report without touching the output path.
pub fn execute(spec: &JobSpec) -> JobOutcome {
    if let Err(e) = spec.validate() {
        return render::<()>(spec, None, Err(e));
    }
    let input = match &spec.input {
        Some(path) => match load_input(path, spec.epsilon_floor) {
            Ok(i) => Some(i),
            Err(e) => return render::<()>(spec, None, Err(e)),
        },
        None => None,
    };
    let input = input.as_ref();
    match spec.command {
        Command::Compute => render(spec, input, compute(spec, input.expect("validated"))),
        Command::Mixed => render(spec, input, mixed(spec, input.expect("validated"))),
        Command::Ith => render(spec, input, ith(spec, input.expect("validated"))),
        Command::Dissimilarity => render(spec, input, dissimilarity(spec, input.expect("validated"))),
        Command::Audit => match input {
            Some(i) => render(spec, Some(i), audit_input(spec, i)),
            None => render(spec, None, Ok(audit_random(spec))),
        },
        Command::Geometry => render(spec, input, geometry(spec)),
    }
}

/// Runs the job, writes the report to `--output` (or stdout) and returns the
/// exit code.
pub fn run_job(spec: &JobSpec) -> i32 {
    let outcome = execute(spec);
    let written = match &spec.output {
        Some(path) => fs::write(path, &outcome.report).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(outcome.report.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => outcome.exit_code,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            EXIT_ERROR
        }
    }
}

/// Generators for the input pairs: `--f` (one for all, or one per pair),
/// else the pair's own `f`, else `power(--alpha)`.
fn pair_generators(spec: &JobSpec, input: &LoadedInput) -> Result<Vec<Generator>, CliError> {
    let n = input.pairs.len();
    match spec.generators.len() {
        0 => input
            .pairs
            .iter()
            .enumerate()
            .map(|(k, pair)| match (&pair.generator, spec.alpha) {
                (Some(f), _) => parse_generator(f, &format!("pairs[{k}].f")),
                (None, Some(alpha)) => Generator::power(alpha).map_err(|e| CliError::validation("--alpha", e)),
                (None, None) => Err(CliError::Job(format!("no generator for pair {}: use --f or --alpha", k + 1))),
            })
            .collect(),
        1 => {
            let g = parse_generator_str(&spec.generators[0], "--f")?;
            Ok(vec![g; n])
        }
        m if m == n => {
            spec.generators.iter().enumerate().map(|(k, t)| parse_generator_str(t, &format!("--f[{k}]"))).collect()
        }
        m => Err(CliError::Job(format!("{m} --f given for {n} pairs"))),
    }
}

fn triples(spec: &JobSpec, input: &LoadedInput) -> Result<Vec<PairTriple>, CliError> {
    let gens = pair_generators(spec, input)?;
    input.pairs.iter().zip(gens).map(|(pair, g)| Ok(PairTriple::new(g, pair.p.clone(), pair.q.clone())?)).collect()
}

#[derive(Debug, Serialize)]
struct PairValue {
    pair: usize,
    generator: String,
    value: Num,
}

#[derive(Debug, Serialize)]
struct ComputeResults {
    values: Vec<PairValue>,
}

fn compute(spec: &JobSpec, input: &LoadedInput) -> Result<Computed<ComputeResults>, CliError> {
    let values = triples(spec, input)?
        .iter()
        .enumerate()
        .map(|(k, t)| {
            Ok(PairValue {
                pair: k + 1,
                generator: t.generator.name(),
                value: Num(f_divergence(&t.generator, &t.p, &t.q)?),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Computed { results: ComputeResults { values }, violation: false })
}

#[derive(Debug, Serialize)]
struct MixedResults {
    n: usize,
    generators: Vec<String>,
    value: Num,
    /// `D_{f,k}` for `k = 0..=n`.
    k_row: Vec<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_k: Option<Num>,
}

fn mixed(spec: &JobSpec, input: &LoadedInput) -> Result<Computed<MixedResults>, CliError> {
    let ts = triples(spec, input)?;
    let n = ts.len();
    if let Some(want) = spec.n {
        if want as usize != n {
            return Err(CliError::Job(format!("--n {want} does not match {n} input pairs")));
        }
    }
    let value = mixed_divergence(&ts)?;
    let k_row = (0..=n).map(|k| mixed_divergence_k(&ts, k)).collect::<Result<Vec<_>, _>>()?;
    let value_k = match spec.k {
        Some(k) => Some(Num(mixed_divergence_k(&ts, k)?)),
        None => None,
    };
    Ok(Computed {
        results: MixedResults {
            n,
            generators: ts.iter().map(|t| t.generator.name()).collect(),
            value: Num(value),
            k_row: nums(&k_row),
            k: spec.k,
            value_k,
        },
        violation: false,
    })
}

#[derive(Debug, Serialize)]
struct IthResults {
    n: u32,
    generators: [String; 2],
    i: Vec<Num>,
    values: Vec<Num>,
}

fn ith(spec: &JobSpec, input: &LoadedInput) -> Result<Computed<IthResults>, CliError> {
    let ts = triples(spec, input)?;
    if ts.len() < 2 {
        return Err(CliError::Job("ith needs two pairs".into()));
    }
    let n = spec.n.unwrap_or(2);
    let base = IthMixedSpec::new(ts[0].clone(), ts[1].clone(), 0.0, n)?;
    let values = spec.i.iter().map(|&i| ith_mixed(&base.with_index(i))).collect::<Result<Vec<_>, _>>()?;
    Ok(Computed {
        results: IthResults {
            n,
            generators: [ts[0].generator.name(), ts[1].generator.name()],
            i: nums(&spec.i),
            values: nums(&values),
        },
        violation: false,
    })
}

#[derive(Debug, Serialize)]
struct DissimilarityResults {
    generator: String,
    arity: usize,
    value: Num,
}

fn dissimilarity(spec: &JobSpec, input: &LoadedInput) -> Result<Computed<DissimilarityResults>, CliError> {
    let densities = input.densities();
    let arity = densities.len();
    let g = parse_multivariate(&spec.generators[0], arity, "--f")?;
    let value = f_dissimilarity(&g, &MeasureVector::new(densities)?)?;
    Ok(Computed { results: DissimilarityResults { generator: g.name(), arity, value: Num(value) }, violation: false })
}

#[derive(Debug, Serialize)]
struct FamilySummary {
    family: String,
    reports: usize,
    violations: usize,
    equality_warnings: usize,
}

#[derive(Debug, Serialize)]
struct AuditSummary {
    reports: usize,
    violations: usize,
    equality_warnings: usize,
    families: Vec<FamilySummary>,
}

#[derive(Debug, Serialize)]
struct AuditConfigRecord {
    seed: u64,
    identity_instances: usize,
    af_convex_instances: usize,
    af_concave_instances: usize,
    concave_upper_instances: usize,
    jensen_instances: usize,
    interpolation_instances: usize,
    corollary_instances: usize,
    equality_instances: usize,
    min_atoms: usize,
    max_atoms: usize,
    max_n: usize,
}

impl From<&AuditConfig> for AuditConfigRecord {
    fn from(c: &AuditConfig) -> Self {
        Self {
            seed: c.seed,
            identity_instances: c.identity_instances,
            af_convex_instances: c.af_convex_instances,
            af_concave_instances: c.af_concave_instances,
            concave_upper_instances: c.concave_upper_instances,
            jensen_instances: c.jensen_instances,
            interpolation_instances: c.interpolation_instances,
            corollary_instances: c.corollary_instances,
            equality_instances: c.equality_instances,
            min_atoms: c.min_atoms,
            max_atoms: c.max_atoms,
            max_n: c.max_n,
        }
    }
}

#[derive(Debug, Serialize)]
struct AuditResults {
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<AuditConfigRecord>,
    summary: AuditSummary,
    reports: Vec<AuditRecord>,
}

fn summarize(reports: &[AuditReport]) -> AuditSummary {
    let mut families: Vec<FamilySummary> = Vec::new();
    for r in reports {
        let idx = match families.iter().position(|f| f.family == r.family) {
            Some(i) => i,
            None => {
                families.push(FamilySummary {
                    family: r.family.clone(),
                    reports: 0,
                    violations: 0,
                    equality_warnings: 0,
                });
                families.len() - 1
            }
        };
        let f = &mut families[idx];
        f.reports += 1;
        f.violations += usize::from(!r.holds);
        f.equality_warnings += usize::from(r.holds && !r.warnings.is_empty());
    }
    AuditSummary {
        reports: reports.len(),
        violations: families.iter().map(|f| f.violations).sum(),
        equality_warnings: families.iter().map(|f| f.equality_warnings).sum(),
        families,
    }
}

fn audit_results(config: Option<&AuditConfig>, reports: &[AuditReport]) -> Computed<AuditResults> {
    let summary = summarize(reports);
    let violation = summary.violations > 0;
    Computed {
        results: AuditResults {
            config: config.map(AuditConfigRecord::from),
            summary,
            reports: reports.iter().map(AuditRecord::from).collect(),
        },
        violation,
    }
}

fn audit_random(spec: &JobSpec) -> Computed<AuditResults> {
    let config = spec.audit_config();
    let reports = audit_suite(&config);
    audit_results(Some(&config), &reports)
}

/// Jensen bounds for every pair; the Alexandrov–Fenchel inequality for each
/// `m` (or `--m`) and, for concave generators, the product chain.
fn audit_input(spec: &JobSpec, input: &LoadedInput) -> Result<Computed<AuditResults>, CliError> {
    let ts = triples(spec, input)?;
    let tol = spec.tolerances;
    let mut reports = Vec::new();
    let mut push = |family: &str, instance: usize, name: &str, r: mixdiv_core::Result<AuditReport>| {
        let mut rep = r.unwrap_or_else(|e| AuditReport::failed(name, e.to_string(), tol));
        rep.family = family.into();
        rep.instance = instance;
        reports.push(rep);
    };
    for (k, t) in ts.iter().enumerate() {
        push("jensen", k, "jensen", check_jensen_bound(&t.generator, &t.p, &t.q, tol));
    }
    let n = ts.len();
    let all_convex = ts.iter().all(|t| t.generator.shape().is_convex());
    let all_concave = ts.iter().all(|t| t.generator.shape().is_concave());
    if all_convex || all_concave {
        let ms: Vec<usize> = match spec.m {
            Some(m) => vec![m],
            None => (1..=n).collect(),
        };
        for m in ms {
            push("alexandrov_fenchel", m, "alexandrov_fenchel", check_alexandrov_fenchel(&ts, m, tol));
        }
    }
    if all_concave {
        push("concave_upper", 0, "concave_upper", check_concave_upper(&ts, tol));
    }
    Ok(audit_results(None, &reports))
}

#[derive(Debug, Serialize)]
struct GeometryResults {
    dimension: usize,
    resolution: usize,
    nodes: usize,
    generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Num>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    i: Vec<Num>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    values: Vec<Num>,
}

fn geometry(spec: &JobSpec) -> Result<Computed<GeometryResults>, CliError> {
    let bodies = spec
        .bodies
        .iter()
        .enumerate()
        .map(|(k, t)| parse_body(t, &format!("--body[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let dimension = bodies[0].dimension();
    let resolution = spec.resolution.unwrap_or(DEFAULT_RESOLUTION);
    let grid = sphere_grid(dimension, resolution)?;
    let generators = match spec.generators.len() {
        0 => vec![Generator::power(1.0 / (dimension as f64 + 1.0))?],
        _ => spec
            .generators
            .iter()
            .enumerate()
            .map(|(k, t)| parse_generator_str(t, &format!("--f[{k}]")))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let names: Vec<String> = generators.iter().map(Generator::name).collect();
    let mut results = GeometryResults {
        dimension,
        resolution,
        nodes: grid.len(),
        generators: names,
        value: None,
        i: Vec::new(),
        values: Vec::new(),
    };
    if spec.i.is_empty() {
        let expand = |len: usize, what: &str| -> Result<usize, CliError> {
            match len {
                1 => Ok(dimension),
                l if l == dimension => Ok(l),
                l => Err(CliError::Job(format!("{l} {what} given for dimension {dimension}"))),
            }
        };
        expand(bodies.len(), "bodies")?;
        expand(generators.len(), "generators")?;
        let bs: Vec<_> = (0..dimension).map(|k| bodies[k.min(bodies.len() - 1)].clone()).collect();
        let gs: Vec<_> = (0..dimension).map(|k| generators[k.min(generators.len() - 1)].clone()).collect();
        results.value = Some(Num(mixed_affine_surface_area(&bs, &gs, &grid)?));
    } else {
        if bodies.len() > 2 || generators.len() > 2 {
            return Err(CliError::Job("i-th geometry takes at most two bodies and two generators".into()));
        }
        let (b1, b2) = (&bodies[0], &bodies[bodies.len() - 1]);
        let (f1, f2) = (&generators[0], &generators[generators.len() - 1]);
        let values = spec
            .i
            .iter()
            .map(|&i| ith_mixed_affine_surface_area(b1, b2, f1, f2, i, &grid))
            .collect::<Result<Vec<_>, _>>()?;
        results.i = nums(&spec.i);
        results.values = nums(&values);
    }
    Ok(Computed { results, violation: false })
}
