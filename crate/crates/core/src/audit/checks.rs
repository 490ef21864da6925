use alloc::format;
use alloc::vec::Vec;

use super::proportional::{approx_constant, approx_equal, effectively_proportional, mutually_proportional};
use super::{AuditReport, EqualityBasis, Tolerances};
use crate::divergence::{f_divergence, ith_mixed, mixed_divergence, IthMixedSpec, PairTriple};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::math::{exp, ln, powf};
use crate::measure::Density;

fn require_probability(triples: &[PairTriple]) -> Result<()> {
    for (i, t) in triples.iter().enumerate() {
        if !(t.p.is_probability() && t.q.is_probability()) {
            return Err(Error::ProbabilityRequired(format!("pair {} is not probability-certified", i + 1)));
        }
    }
    Ok(())
}

/// `(t₁, …, t_{n−m}, t_k, …, t_k)` with `m` trailing copies of triple `k`
/// (1-based, `n − m < k ≤ n`).
pub fn build_nk(triples: &[PairTriple], m: usize, k: usize) -> Result<Vec<PairTriple>> {
    let n = triples.len();
    if m < 1 || m > n {
        return Err(Error::IndexOutOfRange { index: m as f64, min: 1.0, max: n as f64 });
    }
    if k + m <= n || k > n {
        return Err(Error::IndexOutOfRange { index: k as f64, min: (n - m + 1) as f64, max: n as f64 });
    }
    let mut out: Vec<PairTriple> = triples[..n - m].to_vec();
    out.extend(core::iter::repeat_n(triples[k - 1].clone(), m));
    Ok(out)
}

/// `[D_f(P,Q)]^m ≤ Π_{k=n−m+1}^{n} D_{f^{n,k}}(P^{n,k}, Q^{n,k})` for all-convex
/// or all-concave generator vectors.
///
/// Equality is predicted when one of `g₀^{1/m}·g_j` is null or all of them
/// are effectively proportional.
pub fn check_alexandrov_fenchel(triples: &[PairTriple], m: usize, tol: Tolerances) -> Result<AuditReport> {
    let n = triples.len();
    if n == 0 {
        return Err(Error::MixedArityZero);
    }
    let all_convex = triples.iter().all(|t| t.generator.shape().is_convex());
    let all_concave = triples.iter().all(|t| t.generator.shape().is_concave());
    if !(all_convex || all_concave) {
        return Err(Error::ShapeMismatch("generators must be all convex or all concave".into()));
    }
    require_probability(triples)?;
    // validates m
    build_nk(triples, m, n)?;

    let d = mixed_divergence(triples)?;
    let lhs = powf(d, m as f64);
    let mut report_detail = Vec::with_capacity(m);
    let mut rhs = 1.0;
    for k in n - m + 1..=n {
        let dk = mixed_divergence(&build_nk(triples, m, k)?)?;
        report_detail.push((k, dk));
        rhs *= dk;
    }

    // g₀^{1/m}·g_{j+1} per atom, j = 0..m−1
    let integrands = triples.iter().map(PairTriple::integrand).collect::<Result<Vec<_>>>()?;
    let inv_n = 1.0 / n as f64;
    let atoms = triples[0].space().len();
    let mut hs: Vec<Vec<f64>> = (0..m).map(|_| Vec::with_capacity(atoms)).collect();
    for a in 0..atoms {
        let g0_zero = integrands[..n - m].iter().any(|x| x[a] == 0.0);
        let log_g0: f64 = integrands[..n - m].iter().filter(|x| x[a] > 0.0).map(|x| inv_n * ln(x[a])).sum();
        for (j, h) in hs.iter_mut().enumerate() {
            let x = integrands[n - 1 - j][a];
            h.push(if g0_zero || x == 0.0 { 0.0 } else { exp(log_g0 / m as f64 + inv_n * ln(x)) });
        }
    }
    let verdict = mutually_proportional(&hs, tol.prop)?;
    let name = if all_convex { "alexandrov_fenchel_convex" } else { "alexandrov_fenchel_concave" };
    let mut report = AuditReport::inequality(name, lhs, rhs, tol, verdict.proportional, EqualityBasis::Characterized)
        .with_detail("m", m as f64)
        .with_detail("mixed", d)
        .with_detail("ratio_spread", verdict.ratio_spread);
    for (k, dk) in report_detail {
        report = report.with_detail(&format!("mixed_nk[{k}]"), dk);
    }
    Ok(report)
}

fn common_density(triples: &[PairTriple], eps: f64) -> bool {
    let p = triples[0].p.values();
    triples.iter().all(|t| approx_equal(t.p.values(), p, eps) && approx_equal(t.q.values(), p, eps))
}

fn convex_combination(g: &Generator, p: &Density, q: &Density) -> Option<Vec<f64>> {
    let (a, b) = g.linear_coefficients()?;
    let s = a + b;
    Some(p.values().iter().zip(q.values()).map(|(p, q)| (a * p + b * q) / s).collect())
}

/// Two-link chain `[D_f(P,Q)]^n ≤ Π D_{fᵢ}(Pᵢ,Qᵢ) ≤ Π fᵢ(1)` for concave
/// generators. `lhs`/`rhs` are the chain ends; `holds` requires each link.
pub fn check_concave_upper(triples: &[PairTriple], tol: Tolerances) -> Result<AuditReport> {
    let n = triples.len();
    if n == 0 {
        return Err(Error::MixedArityZero);
    }
    if !triples.iter().all(|t| t.generator.shape().is_concave()) {
        return Err(Error::ShapeMismatch("all generators must be concave".into()));
    }
    require_probability(triples)?;
    let d = mixed_divergence(triples)?;
    let lhs = powf(d, n as f64);
    let mut mid = 1.0;
    let mut rhs = 1.0;
    for t in triples {
        mid *= f_divergence(&t.generator, &t.p, &t.q)?;
        rhs *= t.generator.eval(1.0)?;
    }

    let (expected, basis) = if triples.iter().all(|t| t.generator.linear_coefficients().is_some()) {
        let combos: Vec<Vec<f64>> =
            triples.iter().filter_map(|t| convex_combination(&t.generator, &t.p, &t.q)).collect();
        (combos.iter().all(|c| approx_equal(c, &combos[0], tol.prop)), EqualityBasis::LinearRemark)
    } else if triples.iter().all(|t| t.generator.is_strict()) {
        (common_density(triples, tol.prop), EqualityBasis::Characterized)
    } else {
        (common_density(triples, tol.prop), EqualityBasis::SufficientOnly)
    };

    let link1 = AuditReport::inequality("link1", lhs, mid, tol, false, basis);
    let link2 = AuditReport::inequality("link2", mid, rhs, tol, false, basis);
    let mut report = AuditReport::inequality("concave_upper", lhs, rhs, tol, expected, basis)
        .with_detail("mixed", d)
        .with_detail("product_f_divergences", mid)
        .with_detail("link1_slack", link1.slack)
        .with_detail("link2_slack", link2.slack);
    report.holds = link1.holds && link2.holds;
    report.equality_observed = report.holds && link1.equality_observed && link2.equality_observed;
    report.warnings.clear();
    if report.equality_observed && !expected {
        report.warnings.push("equality observed but no equality condition detected".into());
    }
    if expected && !report.equality_observed {
        report.warnings.push("equality condition detected but equality not observed".into());
    }
    Ok(report)
}

/// Jensen bounds `D_f(P,Q) ≥ f(1)` (convex) or `≤ f(1)` (concave); equality
/// for linear `f`.
pub fn check_jensen_bound(g: &Generator, p: &Density, q: &Density, tol: Tolerances) -> Result<AuditReport> {
    if !(p.is_probability() && q.is_probability()) {
        return Err(Error::ProbabilityRequired("jensen bound needs probability densities".into()));
    }
    let d = f_divergence(g, p, q)?;
    let f1 = g.eval(1.0)?;
    if g.linear_coefficients().is_some() {
        return Ok(AuditReport::identity("jensen_linear", d, f1, tol).with_detail("f_divergence", d));
    }
    let same = approx_equal(p.values(), q.values(), tol.prop);
    let basis = if g.is_strict() { EqualityBasis::Characterized } else { EqualityBasis::SufficientOnly };
    let report = if g.shape().is_convex() {
        AuditReport::inequality("jensen_convex", f1, d, tol, same, basis)
    } else {
        AuditReport::inequality("jensen_concave", d, f1, tol, same, basis)
    };
    Ok(report.with_detail("f_divergence", d).with_detail("f_at_one", f1))
}

/// Log-convexity of `i ↦ D(i)`:
/// `D(i) ≤ D(j)^{(k−i)/(k−j)} · D(k)^{(i−j)/(k−j)}` for `i` between `j` and `k`,
/// where `i` is taken from `spec`.
pub fn check_interpolation(spec: &IthMixedSpec, j: f64, k: f64, tol: Tolerances) -> Result<AuditReport> {
    let i = spec.i;
    if j == k {
        return Err(Error::DegenerateIndices(j));
    }
    let (lo, hi) = if j < k { (j, k) } else { (k, j) };
    if !(lo <= i && i <= hi) {
        return Err(Error::IndexOutOfRange { index: i, min: lo, max: hi });
    }
    let di = ith_mixed(spec)?;
    let dj = ith_mixed(&spec.with_index(j))?;
    let dk = ith_mixed(&spec.with_index(k))?;
    let wj = (k - i) / (k - j);
    let wk = (i - j) / (k - j);
    let rhs = powf(dj, wj) * powf(dk, wk);

    let (expected, basis) = if i == j || i == k {
        (true, EqualityBasis::Trivial)
    } else {
        let v = effectively_proportional(&spec.pair1.integrand()?, &spec.pair2.integrand()?, tol.prop)?;
        (v.proportional, EqualityBasis::Characterized)
    };
    Ok(AuditReport::inequality("interpolation", di, rhs, tol, expected, basis)
        .with_detail("n", spec.n as f64)
        .with_detail("i", i)
        .with_detail("j", j)
        .with_detail("k", k)
        .with_detail("d_i", di)
        .with_detail("d_j", dj)
        .with_detail("d_k", dk))
}

pub(crate) fn densities_at_one(d: &Density, eps: f64) -> bool {
    approx_constant(d.values(), 1.0, eps)
}
