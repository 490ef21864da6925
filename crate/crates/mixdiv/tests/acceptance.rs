//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mixdiv::{execute, Command, JobSpec, EXIT_OK};
use mixdiv_core::audit::{audit_suite, AuditConfig, AuditReport, Relation};
use mixdiv_core::divergence::{f_divergence, mixed_bhattacharyya, mixed_divergence, mixed_renyi};
use mixdiv_core::geometry::{mixed_affine_surface_area, sphere_grid, EllipsoidBody, DEFAULT_RESOLUTION};
use mixdiv_core::{Density, Generator, MeasureSpace, PairTriple};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn only(f: impl FnOnce(&mut AuditConfig)) -> AuditConfig {
    let mut c = AuditConfig::empty(42);
    f(&mut c);
    c
}

fn family<'a>(reports: &'a [AuditReport], name: &str) -> Vec<&'a AuditReport> {
    reports.iter().filter(|r| r.family == name).collect()
}

fn instances(reports: &[&AuditReport]) -> usize {
    let mut ids: Vec<usize> = reports.iter().map(|r| r.instance).collect();
    ids.dedup();
    ids.len()
}

fn all_hold(reports: &[&AuditReport], what: &str) -> Result<(), String> {
    match reports.iter().find(|r| !r.holds) {
        Some(r) => Err(format!("{what}: {} instance {} fails (lhs {}, rhs {})", r.name, r.instance, r.lhs, r.rhs)),
        None => Ok(()),
    }
}

/// Inequality slack within `−1e-12·max(1, |rhs|)`.
fn slack_ok(r: &AuditReport) -> bool {
    r.slack >= -1e-12 * r.rhs.abs().max(1.0)
}

fn equality_within(reports: &[&AuditReport], eps: f64, what: &str) -> Result<(), String> {
    match reports.iter().find(|r| !(r.holds && r.equality_observed && r.relative_slack() <= eps)) {
        Some(r) => Err(format!("{what}: {} instance {} relative slack {:e}", r.name, r.instance, r.relative_slack())),
        None => Ok(()),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let config = only(|c| c.identity_instances = 1000);
    let reports = audit_suite(&config);
    let elapsed = start.elapsed();
    let ids = family(&reports, "identity");
    ensure(instances(&ids) >= 1000, || format!("only {} instances", instances(&ids)))?;
    for kind in ["permutation", "order_change_k", "adjoint_swap", "symmetry", "diagonal"] {
        let group: Vec<&AuditReport> = ids.iter().copied().filter(|r| r.name.starts_with(kind)).collect();
        ensure(group.len() >= 1000, || format!("{kind}: {} checks", group.len()))?;
        if let Some(r) =
            group.iter().find(|r| !(r.relation == Relation::Equal && r.holds && r.relative_slack() <= 1e-12))
        {
            return Err(format!("{kind} instance {}: relative difference {:e}", r.instance, r.relative_slack()));
        }
    }
    all_hold(&ids, "identity")?;
    ensure(elapsed < Duration::from_secs(30), || format!("runtime {elapsed:?}"))?;
    let worst = ids.iter().map(|r| r.relative_slack()).fold(0.0, f64::max);
    Ok(format!("{} checks over 1000 instances, worst relative difference {worst:.1e}, {elapsed:.2?}", ids.len()))
}

fn catalog() -> Vec<Generator> {
    let mut g = vec![Generator::total_variation(), Generator::kl_positive_part(), Generator::linear(0.3, 1.7).unwrap()];
    g.extend([-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0].iter().map(|&a| Generator::power(a).unwrap()));
    g
}

fn criterion_2() -> Outcome {
    let grid: Vec<f64> = (-10..=10).map(|k| 2f64.powi(k)).collect();
    let mut checks = 0;
    for g in catalog() {
        let back = g.adjoint().adjoint();
        let adj = g.adjoint();
        for &t in &grid {
            let (a, b) = (g.eval(t).unwrap(), back.eval(t).unwrap());
            ensure(rel(a, b) <= 1e-12, || format!("{}: (f*)*({t}) = {b} vs {a}", g.name()))?;
            for &(p, q) in &[(t, 1.0), (1.0, t), (t, 0.5)] {
                let lhs = q * g.eval(p / q).unwrap();
                let rhs = p * adj.eval(q / p).unwrap();
                ensure(rel(lhs, rhs) <= 1e-12, || format!("{}: q f(p/q) = {lhs}, p f*(q/p) = {rhs}", g.name()))?;
            }
            checks += 4;
        }
    }
    Ok(format!("{checks} checks on the 21-point grid 2^-10..2^10, {} generators", catalog().len()))
}

fn criterion_3() -> Outcome {
    let config = only(|c| {
        c.af_convex_instances = 1000;
        c.af_concave_instances = 1000;
        c.equality_instances = 1000;
    });
    let reports = audit_suite(&config);
    let mut total = 0;
    for fam in ["af_convex", "af_concave"] {
        let rs = family(&reports, fam);
        ensure(instances(&rs) >= 1000, || format!("{fam}: {} instances", instances(&rs)))?;
        // every m in 1..=n: instance report counts are 1, 2, …, n in order
        let mut expected_m = 1.0;
        let mut last = usize::MAX;
        for r in &rs {
            if r.instance != last {
                expected_m = 1.0;
                last = r.instance;
            }
            ensure(r.detail_value("m") == Some(expected_m), || {
                format!("{fam} instance {}: m sequence broken", r.instance)
            })?;
            expected_m += 1.0;
            ensure(slack_ok(r), || format!("{fam} instance {}: slack {:e}", r.instance, r.slack))?;
        }
        all_hold(&rs, fam)?;
        total += rs.len();
    }
    let identical = family(&reports, "equality_af_identical");
    let scaled = family(&reports, "equality_af_scaled");
    equality_within(&identical, 1e-10, "identical triples")?;
    equality_within(&scaled, 1e-10, "scaled generators")?;
    Ok(format!("{total} inequality checks, 0 violations; {} equality checks tight", identical.len() + scaled.len()))
}

fn criterion_4() -> Outcome {
    let config = only(|c| {
        c.concave_upper_instances = 1000;
        c.equality_instances = 1000;
    });
    let reports = audit_suite(&config);
    let chain = family(&reports, "concave_upper");
    ensure(chain.len() >= 1000, || format!("{} instances", chain.len()))?;
    for r in &chain {
        let l1 = r.detail_value("link1_slack").unwrap_or(f64::NAN);
        let l2 = r.detail_value("link2_slack").unwrap_or(f64::NAN);
        ensure(r.holds && l1 >= -1e-12 * r.rhs.abs().max(1.0) && l2 >= -1e-12 * r.rhs.abs().max(1.0), || {
            format!("instance {}: links {l1:e}, {l2:e}", r.instance)
        })?;
    }
    let common = family(&reports, "equality_concave_common");
    equality_within(&common, 1e-10, "common density")?;
    Ok(format!("{} chains hold; {} common-density instances tight", chain.len(), common.len()))
}

fn criterion_5() -> Outcome {
    let config = only(|c| c.jensen_instances = 1000);
    let reports = audit_suite(&config);
    let js = family(&reports, "jensen");
    ensure(js.len() >= 1000, || format!("{} instances", js.len()))?;
    let (mut convex, mut concave, mut linear) = (0, 0, 0);
    for r in &js {
        match r.name.as_str() {
            "jensen_convex" | "jensen_concave" => {
                ensure(r.holds && slack_ok(r), || format!("{} instance {}: slack {:e}", r.name, r.instance, r.slack))?;
                if r.name == "jensen_convex" {
                    convex += 1;
                } else {
                    concave += 1;
                }
            }
            "jensen_linear" => {
                ensure((r.lhs - r.rhs).abs() <= 1e-12, || {
                    format!("linear instance {}: |D − f(1)| = {:e}", r.instance, (r.lhs - r.rhs).abs())
                })?;
                linear += 1;
            }
            other => return Err(format!("unexpected report {other}")),
        }
    }
    ensure(convex > 0 && concave > 0 && linear > 0, || "a shape class was never sampled".into())?;
    Ok(format!("{convex} convex, {concave} concave, {linear} linear instances"))
}

fn criterion_6() -> Outcome {
    let config = only(|c| {
        c.identity_instances = 1000;
        c.interpolation_instances = 1000;
        c.corollary_instances = 1000;
    });
    let reports = audit_suite(&config);
    let interp = family(&reports, "interpolation");
    all_hold(&interp, "interpolation")?;
    for r in &interp {
        ensure(slack_ok(r), || format!("interpolation instance {}: slack {:e}", r.instance, r.slack))?;
    }
    let below = interp.iter().filter(|r| r.detail_value("j").is_some_and(|j| j < 0.0)).count();
    let above = interp
        .iter()
        .filter(|r| matches!((r.detail_value("k"), r.detail_value("n")), (Some(k), Some(n)) if k > n))
        .count();
    ensure(interp.len() >= 1000 && below > 0 && above > 0, || {
        format!("{} interpolation checks, {below} with j < 0, {above} with k > n", interp.len())
    })?;

    let cases = [
        ("corollary_concave_0_i_n", true),
        ("corollary_ref_concave", true),
        ("corollary_convex_concave_k_ge_n", false),
        ("corollary_ref_convex", false),
        ("corollary_concave_convex_k_le_0", false),
        ("corollary_ref_concave_k_le_0", false),
    ];
    for (fam, upper) in cases {
        let rs = family(&reports, fam);
        ensure(rs.len() >= 1000, || format!("{fam}: {} instances", rs.len()))?;
        all_hold(&rs, fam)?;
        for r in &rs {
            // upper bounds compare [D]^n ≤ bound, lower bounds bound ≤ [D]^n
            let d = r.detail_value("divergence").unwrap();
            let n = r.detail_value("n").unwrap();
            let powered = d.powf(n);
            let side = if upper { r.lhs } else { r.rhs };
            ensure(rel(side, powered) <= 1e-12, || format!("{fam} instance {}: direction mismatch", r.instance))?;
            ensure(slack_ok(r), || format!("{fam} instance {}: slack {:e}", r.instance, r.slack))?;
        }
    }
    let ids = family(&reports, "identity");
    let mut endpoint_checks = 0;
    for kind in ["ith_duality", "ith_endpoint_n", "ith_endpoint_0"] {
        let group: Vec<&&AuditReport> = ids.iter().filter(|r| r.name == kind).collect();
        ensure(group.len() >= 1000, || format!("{kind}: {} checks", group.len()))?;
        if let Some(r) = group.iter().find(|r| !(r.holds && r.relative_slack() <= 1e-12)) {
            return Err(format!("{kind} instance {}: {:e}", r.instance, r.relative_slack()));
        }
        endpoint_checks += group.len();
    }
    Ok(format!(
        "{} interpolation ({below} with j<0, {above} with k>n), 6×1000 corollary, {endpoint_checks} endpoint/duality checks",
        interp.len()
    ))
}

/// Direct summation, sharing nothing with the library beyond the inputs.
fn oracle_sum(terms: impl Iterator<Item = f64>) -> f64 {
    terms.sum()
}

fn criterion_7() -> Outcome {
    let space = Arc::new(MeasureSpace::new(vec![1.0, 1.0]).unwrap());
    let d = |v: &[f64]| Density::new(space.clone(), v.to_vec(), true).unwrap();
    let (p, q, p2, q2) = (d(&[0.5, 0.5]), d(&[0.25, 0.75]), d(&[0.8, 0.2]), d(&[0.5, 0.5]));
    let (pv, qv, p2v, q2v): ([f64; 2], [f64; 2], [f64; 2], [f64; 2]) =
        ([0.5, 0.5], [0.25, 0.75], [0.8, 0.2], [0.5, 0.5]);

    let tv = f_divergence(&Generator::total_variation(), &p, &q).unwrap();
    let kl = f_divergence(&Generator::kl_positive_part(), &p, &q).unwrap();
    let pairs = vec![(p.clone(), q.clone()), (p.clone(), q.clone())];
    let bc = mixed_bhattacharyya(&pairs).unwrap();
    let sqrt = Generator::sqrt();
    let mixed = mixed_divergence(&[
        PairTriple::new(sqrt.clone(), p.clone(), q.clone()).unwrap(),
        PairTriple::new(sqrt, p2.clone(), q2.clone()).unwrap(),
    ])
    .unwrap();
    let renyi = mixed_renyi(&pairs, 0.5).unwrap();

    let o_tv = oracle_sum((0..2).map(|j| (pv[j] - qv[j]).abs()));
    let o_kl = oracle_sum((0..2).map(|j| if pv[j] > qv[j] { pv[j] * (pv[j] / qv[j]).ln() } else { 0.0 }));
    let o_bc = oracle_sum((0..2).map(|j| (pv[j] * qv[j]).sqrt()));
    let o_mixed = oracle_sum((0..2).map(|j| (pv[j] * qv[j] * p2v[j] * q2v[j]).powf(0.25)));
    let o_renyi = -2.0 * o_bc.ln();

    let rows = [
        ("TV", tv, o_tv, 0.5),
        ("KL+", kl, o_kl, 0.34657),
        ("Bhattacharyya", bc, o_bc, 0.965926),
        ("mixed sqrt", mixed, o_mixed, 0.91293),
        ("Renyi 1/2", renyi, o_renyi, 0.069335),
    ];
    for (name, value, oracle, stated) in rows {
        ensure((value - oracle).abs() <= 1e-14, || format!("{name}: library {value} vs oracle {oracle}"))?;
        ensure((value - stated).abs() <= 1e-5, || format!("{name}: {value} vs stated {stated}"))?;
    }
    Ok(format!("TV {tv:.6}, KL+ {kl:.6}, BC {bc:.6}, mixed {mixed:.6}, Renyi {renyi:.6}; oracle agreement 1e-14"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let f = vec![Generator::power(0.25).unwrap(); 3];
    let ball = vec![EllipsoidBody::ball(3, 1.0).unwrap(); 3];
    let ellipsoid = vec![EllipsoidBody::new(vec![1.0, 2.0, 3.0]).unwrap(); 3];
    let grid = sphere_grid(3, DEFAULT_RESOLUTION).map_err(|e| e.to_string())?;
    let unit = mixed_affine_surface_area(&ball, &f, &grid).map_err(|e| e.to_string())?;
    let value = mixed_affine_surface_area(&ellipsoid, &f, &grid).map_err(|e| e.to_string())?;
    let closed_ball = 4.0 * PI;
    let closed_ellipsoid = 4.0 * PI * 6f64.sqrt();
    ensure(rel(unit, closed_ball) <= 1e-6, || format!("unit ball {unit} vs {closed_ball}"))?;
    ensure(rel(value, closed_ellipsoid) <= 1e-6, || format!("ellipsoid {value} vs {closed_ellipsoid}"))?;

    // the closed form is confirmed independently: refining the grid converges to it
    let mut errors = Vec::new();
    for r in [8, 16, 32, 128] {
        let g = sphere_grid(3, r).map_err(|e| e.to_string())?;
        errors.push(rel(mixed_affine_surface_area(&ellipsoid, &f, &g).map_err(|e| e.to_string())?, closed_ellipsoid));
    }
    ensure(errors[0] > errors[1] && errors[1] > errors[2] && errors[3] <= 1e-12, || {
        format!("refinement errors {errors:?}")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("runtime {elapsed:?}"))?;
    Ok(format!(
        "ball error {:.1e}, ellipsoid error {:.1e} at 64x128; refinement errors {:.1e}/{:.1e}/{:.1e}/{:.1e}; {elapsed:.2?}",
        rel(unit, closed_ball),
        rel(value, closed_ellipsoid),
        errors[0],
        errors[1],
        errors[2],
        errors[3]
    ))
}

fn criterion_9() -> Outcome {
    let spec = JobSpec::new(Command::Audit);
    let a = execute(&spec);
    let b = execute(&spec);
    ensure(a.exit_code == EXIT_OK, || format!("audit exit code {}", a.exit_code))?;
    ensure(a.report == b.report, || "reports differ".into())?;
    Ok(format!("two default audits (seed 42) produced identical {}-byte reports", a.report.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("identity suite", criterion_1),
        ("adjoint machinery", criterion_2),
        ("Alexandrov-Fenchel suite", criterion_3),
        ("concave product chain", criterion_4),
        ("Jensen bounds", criterion_5),
        ("index interpolation and corollaries", criterion_6),
        ("worked fixtures", criterion_7),
        ("geometry oracle", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
