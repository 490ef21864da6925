//! Seeded randomized audit runs.
//!
//! Every family draws from its own ChaCha8 stream, so adding instances to
//! one family never perturbs another, and the output is a pure function of
//! the configuration.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    check_alexandrov_fenchel, check_concave_upper, check_corollary, check_interpolation, check_jensen_bound,
    AuditReport, CorollaryCase, CorollaryInputs, SecondArgument, Tolerances,
};
use crate::divergence::{f_divergence, ith_mixed, mixed_divergence, mixed_divergence_k, IthMixedSpec, PairTriple};
use crate::error::Result;
use crate::generator::Generator;
use crate::math::exp;
use crate::measure::{Density, MeasureSpace};
use crate::sum::compensated_sum;

/// Instance counts per family, seed and tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    pub seed: u64,
    pub identity_instances: usize,
    pub af_convex_instances: usize,
    pub af_concave_instances: usize,
    pub concave_upper_instances: usize,
    pub jensen_instances: usize,
    pub interpolation_instances: usize,
    /// Per corollary case.
    pub corollary_instances: usize,
    /// Per equality-constructed family.
    pub equality_instances: usize,
    pub min_atoms: usize,
    pub max_atoms: usize,
    pub max_n: usize,
    pub tolerances: Tolerances,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            identity_instances: 1000,
            af_convex_instances: 1000,
            af_concave_instances: 1000,
            concave_upper_instances: 1000,
            jensen_instances: 1000,
            interpolation_instances: 1000,
            corollary_instances: 1000,
            equality_instances: 1000,
            min_atoms: 2,
            max_atoms: 64,
            max_n: 6,
            tolerances: Tolerances::default(),
        }
    }
}

impl AuditConfig {
    /// A configuration that runs nothing.
    pub fn empty(seed: u64) -> Self {
        Self {
            seed,
            identity_instances: 0,
            af_convex_instances: 0,
            af_concave_instances: 0,
            concave_upper_instances: 0,
            jensen_instances: 0,
            interpolation_instances: 0,
            corollary_instances: 0,
            equality_instances: 0,
            ..Self::default()
        }
    }

    /// Every count set to `count`.
    pub fn uniform(seed: u64, count: usize) -> Self {
        Self {
            seed,
            identity_instances: count,
            af_convex_instances: count,
            af_concave_instances: count,
            concave_upper_instances: count,
            jensen_instances: count,
            interpolation_instances: count,
            corollary_instances: count,
            equality_instances: count,
            ..Self::default()
        }
    }
}

/// Which generators an instance may draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pool {
    All,
    Convex,
    Concave,
    PositiveAll,
    PositiveConvex,
    PositiveConcave,
}

const CONVEX_ALPHAS: [f64; 4] = [-1.0, -0.5, 2.0, 3.0];
const CONCAVE_ALPHAS: [f64; 3] = [0.25, 0.5, 0.75];

/// Random instance generator used by [`audit_suite`].
#[derive(Debug, Clone)]
pub struct InstanceSampler {
    rng: ChaCha8Rng,
    min_atoms: usize,
    max_atoms: usize,
    max_n: usize,
}

impl InstanceSampler {
    pub fn new(seed: u64, min_atoms: usize, max_atoms: usize, max_n: usize) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            min_atoms: min_atoms.max(1),
            max_atoms: max_atoms.max(min_atoms.max(1)),
            max_n: max_n.max(1),
        }
    }

    /// Switches to an independent stream of the same seed.
    pub fn set_stream(&mut self, stream: u64) {
        self.rng.set_stream(stream);
        self.rng.set_word_pos(0);
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn index_below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn atoms(&mut self) -> usize {
        self.rng.random_range(self.min_atoms..=self.max_atoms)
    }

    pub fn arity(&mut self) -> usize {
        self.rng.random_range(1..=self.max_n)
    }

    /// Atom weights uniform on `[0.5, 2)`, optionally rescaled to total mass 1.
    pub fn space(&mut self, atoms: usize, probability: bool) -> Arc<MeasureSpace> {
        let mut w: Vec<f64> = (0..atoms).map(|_| self.uniform(0.5, 2.0)).collect();
        if probability {
            let total = compensated_sum(w.iter().copied());
            w.iter_mut().for_each(|x| *x /= total);
        }
        Arc::new(MeasureSpace::new(w).expect("sampled weights are positive"))
    }

    /// Unnormalized values `exp(U[−2, 2])` per atom.
    pub fn raw_values(&mut self, atoms: usize) -> Vec<f64> {
        (0..atoms).map(|_| exp(self.uniform(-2.0, 2.0))).collect()
    }

    /// Random probability density.
    pub fn density(&mut self, space: &Arc<MeasureSpace>) -> Density {
        let raw = self.raw_values(space.len());
        normalized(space, raw)
    }

    pub fn generator(&mut self, pool: Pool) -> Generator {
        let (named, alphas): (bool, &[f64]) = match pool {
            Pool::All => (true, &[-1.0, -0.5, 0.25, 0.5, 0.75, 2.0, 3.0]),
            Pool::Convex => (true, &CONVEX_ALPHAS),
            Pool::Concave => (false, &CONCAVE_ALPHAS),
            Pool::PositiveAll => (false, &[-1.0, -0.5, 0.25, 0.5, 0.75, 2.0, 3.0]),
            Pool::PositiveConvex => (false, &CONVEX_ALPHAS),
            Pool::PositiveConcave => (false, &CONCAVE_ALPHAS),
        };
        let extra = if named { 2 } else { 0 };
        let pick = self.index_below(alphas.len() + extra + 1);
        if pick < alphas.len() {
            Generator::power(alphas[pick]).expect("catalog exponent")
        } else if pick == alphas.len() {
            let a = self.uniform(0.1, 2.0);
            let b = self.uniform(0.1, 2.0);
            Generator::linear(a, b).expect("positive coefficients")
        } else if pick == alphas.len() + 1 {
            Generator::total_variation()
        } else {
            Generator::kl_positive_part()
        }
    }

    pub fn triple(&mut self, space: &Arc<MeasureSpace>, pool: Pool) -> PairTriple {
        let g = self.generator(pool);
        let p = self.density(space);
        let q = self.density(space);
        PairTriple::new(g, p, q).expect("shared space")
    }

    pub fn triples(&mut self, space: &Arc<MeasureSpace>, n: usize, pool: Pool) -> Vec<PairTriple> {
        (0..n).map(|_| self.triple(space, pool)).collect()
    }
}

fn normalized(space: &Arc<MeasureSpace>, mut values: Vec<f64>) -> Density {
    let total = compensated_sum(values.iter().zip(space.weights()).map(|(v, w)| v * w));
    values.iter_mut().for_each(|v| *v /= total);
    Density::new(space.clone(), values, true).expect("normalized positive density")
}

fn constant_density(space: &Arc<MeasureSpace>, c: f64) -> Density {
    Density::new(space.clone(), alloc::vec![c; space.len()], true).expect("constant density")
}

/// Family identifiers; also the stream numbers.
const FAMILIES: [&str; 19] = [
    "identity",
    "af_convex",
    "af_concave",
    "concave_upper",
    "jensen",
    "interpolation",
    "corollary_concave_0_i_n",
    "corollary_ref_concave",
    "corollary_convex_concave_k_ge_n",
    "corollary_ref_convex",
    "corollary_concave_convex_k_le_0",
    "corollary_ref_concave_k_le_0",
    "equality_af_identical",
    "equality_af_scaled",
    "equality_concave_common",
    "equality_concave_linear",
    "equality_interpolation",
    "equality_corollary",
    "equality_jensen",
];

struct Runner<'a> {
    config: &'a AuditConfig,
    sampler: InstanceSampler,
    reports: Vec<AuditReport>,
}

impl Runner<'_> {
    fn push(&mut self, family: &str, instance: usize, name: &str, result: Result<AuditReport>) {
        let mut report = match result {
            Ok(r) => r,
            Err(e) => AuditReport::failed(name, e.to_string(), self.config.tolerances),
        };
        report.family = family.into();
        report.instance = instance;
        self.reports.push(report);
    }

    fn identity(&mut self, family: &str, instance: usize, name: &str, lhs: Result<f64>, rhs: Result<f64>) {
        let tol = self.config.tolerances;
        let r = lhs.and_then(|l| rhs.map(|r| AuditReport::identity(name, l, r, tol)));
        self.push(family, instance, name, r);
    }
}

/// Runs every configured family and returns the reports in family, instance
/// and check order.
pub fn audit_suite(config: &AuditConfig) -> Vec<AuditReport> {
    let mut runner = Runner {
        config,
        sampler: InstanceSampler::new(config.seed, config.min_atoms, config.max_atoms, config.max_n),
        reports: Vec::new(),
    };
    let counts = [
        config.identity_instances,
        config.af_convex_instances,
        config.af_concave_instances,
        config.concave_upper_instances,
        config.jensen_instances,
        config.interpolation_instances,
    ];
    for (stream, family) in FAMILIES.iter().enumerate() {
        let count = match stream {
            0..=5 => counts[stream],
            6..=11 => config.corollary_instances,
            _ => config.equality_instances,
        };
        if count == 0 {
            continue;
        }
        runner.sampler.set_stream(stream as u64);
        for instance in 0..count {
            match stream {
                0 => identity_instance(&mut runner, family, instance),
                1 => af_instance(&mut runner, family, instance, Pool::Convex),
                2 => af_instance(&mut runner, family, instance, Pool::Concave),
                3 => concave_upper_instance(&mut runner, family, instance),
                4 => jensen_instance(&mut runner, family, instance),
                5 => interpolation_instance(&mut runner, family, instance),
                6..=11 => corollary_instance(&mut runner, family, instance, CorollaryCase::ALL[stream - 6]),
                12 => eq_af_identical(&mut runner, family, instance),
                13 => eq_af_scaled(&mut runner, family, instance),
                14 => eq_concave_common(&mut runner, family, instance),
                15 => eq_concave_linear(&mut runner, family, instance),
                16 => eq_interpolation(&mut runner, family, instance),
                17 => eq_corollary(&mut runner, family, instance),
                _ => eq_jensen(&mut runner, family, instance),
            }
        }
    }
    runner.reports
}

fn identity_instance(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let triples = s.triples(&space, n, Pool::All);
    let mut perm: Vec<usize> = (0..n).collect();
    for a in (1..n).rev() {
        let b = s.index_below(a + 1);
        perm.swap(a, b);
    }
    let c = s.uniform(0.1, 10.0);
    let index = s.uniform(0.0, n as f64);
    let second = s.index_below(n);

    let base = mixed_divergence(&triples);
    let permuted: Vec<PairTriple> = perm.iter().map(|&k| triples[k].clone()).collect();
    r.identity(family, instance, "permutation", base.clone(), mixed_divergence(&permuted));

    for k in 0..=n {
        let name = format!("order_change_k{k}");
        r.identity(family, instance, &name, base.clone(), mixed_divergence_k(&triples, k));
    }

    let swapped: Vec<PairTriple> = triples.iter().map(PairTriple::swapped).collect();
    r.identity(family, instance, "adjoint_swap", base.clone(), mixed_divergence(&swapped));

    // S(P,Q) = D_f(P,Q) + D_{f*}(P,Q) against S(Q,P).
    let adjoint: Vec<PairTriple> =
        triples.iter().map(|t| PairTriple { generator: t.generator.adjoint(), ..t.clone() }).collect();
    let reversed: Vec<PairTriple> = triples.iter().map(PairTriple::reversed).collect();
    let reversed_adjoint: Vec<PairTriple> = adjoint.iter().map(PairTriple::reversed).collect();
    let s_pq = base.clone().and_then(|a| mixed_divergence(&adjoint).map(|b| a + b));
    let s_qp = mixed_divergence(&reversed).and_then(|a| mixed_divergence(&reversed_adjoint).map(|b| a + b));
    r.identity(family, instance, "symmetry", s_pq, s_qp);

    let diagonal: Vec<PairTriple> = (0..n).map(|_| triples[0].clone()).collect();
    let t0 = &triples[0];
    r.identity(family, instance, "diagonal", mixed_divergence(&diagonal), f_divergence(&t0.generator, &t0.p, &t0.q));

    let scaled = scale_base_measure(&space, &triples, c);
    r.identity(family, instance, "homogeneity", base, scaled.and_then(|t| mixed_divergence(&t)));

    let spec = IthMixedSpec::new(triples[0].clone(), triples[second].clone(), index, n as u32);
    match spec {
        Ok(spec) => {
            let d = ith_mixed(&spec);
            r.identity(family, instance, "ith_duality", d, ith_mixed(&spec.dual()));
            let (p1, p2) = (&spec.pair1, &spec.pair2);
            r.identity(
                family,
                instance,
                "ith_endpoint_n",
                ith_mixed(&spec.with_index(n as f64)),
                f_divergence(&p1.generator, &p1.p, &p1.q),
            );
            r.identity(
                family,
                instance,
                "ith_endpoint_0",
                ith_mixed(&spec.with_index(0.0)),
                f_divergence(&p2.generator, &p2.p, &p2.q),
            );
        }
        Err(e) => r.push(family, instance, "ith_duality", Err(e)),
    }
}

/// The same triples over `c·μ` with densities divided by `c`.
fn scale_base_measure(space: &Arc<MeasureSpace>, triples: &[PairTriple], c: f64) -> Result<Vec<PairTriple>> {
    let weights: Vec<f64> = space.weights().iter().map(|w| w * c).collect();
    let scaled = Arc::new(MeasureSpace::new(weights)?);
    let rescale = |d: &Density| Density::new(scaled.clone(), d.values().iter().map(|v| v / c).collect(), false);
    triples.iter().map(|t| PairTriple::new(t.generator.clone(), rescale(&t.p)?, rescale(&t.q)?)).collect()
}

fn af_instance(r: &mut Runner, family: &str, instance: usize, pool: Pool) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let triples = s.triples(&space, n, pool);
    for m in 1..=n {
        let rep = check_alexandrov_fenchel(&triples, m, r.config.tolerances);
        r.push(family, instance, "alexandrov_fenchel", rep);
    }
}

fn concave_upper_instance(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let triples = s.triples(&space, n, Pool::Concave);
    let rep = check_concave_upper(&triples, r.config.tolerances);
    r.push(family, instance, "concave_upper", rep);
}

fn jensen_instance(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let space = s.space(atoms, false);
    let t = s.triple(&space, Pool::All);
    let rep = check_jensen_bound(&t.generator, &t.p, &t.q, r.config.tolerances);
    r.push(family, instance, "jensen", rep);
}

/// Draws `j < i < k` with `j` possibly negative and `k` possibly above `n`.
fn interpolation_indices(s: &mut InstanceSampler, n: f64) -> (f64, f64, f64) {
    let j = s.uniform(-2.0 * n, n);
    let k = j + s.uniform(0.25, 3.0 * n);
    let i = j + (k - j) * s.uniform(0.05, 0.95);
    (j, i, k)
}

fn interpolation_instance(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let t1 = s.triple(&space, Pool::PositiveAll);
    let t2 = s.triple(&space, Pool::PositiveAll);
    let (j, i, k) = interpolation_indices(s, n as f64);
    let rep =
        IthMixedSpec::new(t1, t2, i, n as u32).and_then(|spec| check_interpolation(&spec, j, k, r.config.tolerances));
    r.push(family, instance, "interpolation", rep);
}

/// Index for a corollary case: occasionally exactly at an endpoint.
fn corollary_index(s: &mut InstanceSampler, case: CorollaryCase, n: f64) -> f64 {
    let endpoint = s.index_below(10) == 0;
    match case {
        CorollaryCase::ConcaveInterior | CorollaryCase::ReferenceConcave => {
            if endpoint {
                if s.index_below(2) == 0 {
                    0.0
                } else {
                    n
                }
            } else {
                s.uniform(0.0, n)
            }
        }
        CorollaryCase::ConvexConcaveAbove | CorollaryCase::ReferenceConvex => {
            if endpoint {
                n
            } else {
                n + s.uniform(0.0, 2.0 * n)
            }
        }
        CorollaryCase::ConcaveConvexBelow | CorollaryCase::ReferenceConcaveBelow => {
            if endpoint {
                0.0
            } else {
                -s.uniform(0.0, 2.0 * n)
            }
        }
    }
}

fn corollary_pools(case: CorollaryCase) -> (Pool, Pool) {
    match case {
        CorollaryCase::ConcaveInterior => (Pool::PositiveConcave, Pool::PositiveConcave),
        CorollaryCase::ConvexConcaveAbove => (Pool::PositiveConvex, Pool::PositiveConcave),
        CorollaryCase::ConcaveConvexBelow => (Pool::PositiveConcave, Pool::PositiveConvex),
        CorollaryCase::ReferenceConcave | CorollaryCase::ReferenceConcaveBelow => {
            (Pool::PositiveConcave, Pool::PositiveAll)
        }
        CorollaryCase::ReferenceConvex => (Pool::PositiveConvex, Pool::PositiveAll),
    }
}

fn corollary_instance(r: &mut Runner, family: &str, instance: usize, case: CorollaryCase) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let (pool1, pool2) = corollary_pools(case);
    let space = s.space(atoms, case.is_reference());
    let pair1 = s.triple(&space, pool1);
    let second = if case.is_reference() {
        SecondArgument::Reference(s.generator(pool2))
    } else {
        SecondArgument::Pair(s.triple(&space, pool2))
    };
    let index = corollary_index(s, case, n as f64);
    let inputs = CorollaryInputs { pair1, second, index, n: n as u32 };
    let rep = check_corollary(case, &inputs, r.config.tolerances);
    r.push(family, instance, "corollary", rep);
}

fn shape_pool(s: &mut InstanceSampler) -> Pool {
    if s.index_below(2) == 0 {
        Pool::Convex
    } else {
        Pool::Concave
    }
}

fn eq_af_identical(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let pool = shape_pool(s);
    let t = s.triple(&space, pool);
    let triples = alloc::vec![t; n];
    for m in 1..=n {
        let rep = check_alexandrov_fenchel(&triples, m, r.config.tolerances);
        r.push(family, instance, "alexandrov_fenchel", rep);
    }
}

fn eq_af_scaled(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let pool = shape_pool(s);
    let t = s.triple(&space, pool);
    let triples: Result<Vec<PairTriple>> = (0..n)
        .map(|_| {
            let lambda = s.uniform(0.5, 3.0);
            Ok(PairTriple { generator: t.generator.scaled(lambda)?, ..t.clone() })
        })
        .collect();
    for m in 1..=n {
        let rep = triples.clone().and_then(|ts| check_alexandrov_fenchel(&ts, m, r.config.tolerances));
        r.push(family, instance, "alexandrov_fenchel", rep);
    }
}

fn eq_concave_common(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let p = s.density(&space);
    let triples: Vec<PairTriple> = (0..n)
        .map(|_| PairTriple::new(s.generator(Pool::Concave), p.clone(), p.clone()).expect("shared space"))
        .collect();
    let rep = check_concave_upper(&triples, r.config.tolerances);
    r.push(family, instance, "concave_upper", rep);
}

/// Linear generators `aᵢt + bᵢ` with `aᵢpᵢ + bᵢqᵢ = (aᵢ + bᵢ)·c` for a common
/// density `c`: `pᵢ = c(1 + bᵢsᵢ)`, `qᵢ = c(1 − aᵢsᵢ)` with `∫c·sᵢ dμ = 0`.
fn eq_concave_linear(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let c = s.density(&space);
    let mut triples = Vec::with_capacity(n);
    for _ in 0..n {
        let a = s.uniform(0.1, 2.0);
        let b = s.uniform(0.1, 2.0);
        let z: Vec<f64> = (0..atoms).map(|_| s.uniform(-1.0, 1.0)).collect();
        let mean = compensated_sum(z.iter().zip(c.values()).zip(space.weights()).map(|((z, c), w)| z * c * w));
        let centered: Vec<f64> = z.iter().map(|z| z - mean).collect();
        let spread = centered.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let amp = if spread > 0.0 { 0.9 / (spread * a.max(b)) } else { 0.0 };
        let p: Vec<f64> = c.values().iter().zip(&centered).map(|(c, s)| c * (1.0 + b * amp * s)).collect();
        let q: Vec<f64> = c.values().iter().zip(&centered).map(|(c, s)| c * (1.0 - a * amp * s)).collect();
        let g = Generator::linear(a, b).expect("positive coefficients");
        triples.push(PairTriple::new(g, normalized(&space, p), normalized(&space, q)).expect("shared space"));
    }
    let rep = check_concave_upper(&triples, r.config.tolerances);
    r.push(family, instance, "concave_upper", rep);
}

fn eq_interpolation(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    let space = s.space(atoms, false);
    let t1 = s.triple(&space, Pool::PositiveAll);
    let lambda = s.uniform(0.5, 3.0);
    let (j, i, k) = interpolation_indices(s, n as f64);
    let rep = t1
        .generator
        .scaled(lambda)
        .and_then(|g| IthMixedSpec::new(t1.clone(), PairTriple { generator: g, ..t1.clone() }, i, n as u32))
        .and_then(|spec| check_interpolation(&spec, j, k, r.config.tolerances));
    r.push(family, instance, "interpolation", rep);
}

fn eq_corollary(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let n = s.arity();
    for case in CorollaryCase::ALL {
        let s = &mut r.sampler;
        let (pool1, pool2) = corollary_pools(case);
        let space = s.space(atoms, case.is_reference());
        let p = if case.is_reference() { constant_density(&space, 1.0) } else { s.density(&space) };
        let pair1 = PairTriple::new(s.generator(pool1), p.clone(), p.clone()).expect("shared space");
        let second = if case.is_reference() {
            SecondArgument::Reference(s.generator(pool2))
        } else {
            SecondArgument::Pair(PairTriple::new(s.generator(pool2), p.clone(), p).expect("shared space"))
        };
        let index = corollary_index(s, case, n as f64);
        let inputs = CorollaryInputs { pair1, second, index, n: n as u32 };
        let rep = check_corollary(case, &inputs, r.config.tolerances);
        r.push(family, instance, "corollary", rep);
    }
}

fn eq_jensen(r: &mut Runner, family: &str, instance: usize) {
    let s = &mut r.sampler;
    let atoms = s.atoms();
    let space = s.space(atoms, false);
    let g = s.generator(Pool::All);
    let p = s.density(&space);
    let rep = check_jensen_bound(&g, &p, &p, r.config.tolerances);
    r.push(family, instance, "jensen", rep);
}
