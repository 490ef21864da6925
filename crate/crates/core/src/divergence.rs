//! Divergence functionals.
//!
//! Every functional here is an integral over atoms of a product of per-pair
//! integrand factors `fᵢ(pᵢ/qᵢ)·qᵢ` raised to real exponents. Products are
//! formed in log space so large or negative exponents neither overflow nor
//! underflow prematurely; zero factors are handled explicitly.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::generator::{Generator, MultivariateGenerator};
use crate::math::{exp, ln, powf};
use crate::measure::{same_space, Density, MeasureSpace, MeasureVector};
use crate::sum::canonical_sum;
use crate::EPS_NORM;

/// One coordinate `(fᵢ, Pᵢ, Qᵢ)` of a mixed divergence.
#[derive(Debug, Clone)]
pub struct PairTriple {
    pub generator: Generator,
    pub p: Density,
    pub q: Density,
}

impl PairTriple {
    pub fn new(generator: Generator, p: Density, q: Density) -> Result<Self> {
        if !p.same_space(&q) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { generator, p, q })
    }

    pub fn space(&self) -> &MeasureSpace {
        self.p.space()
    }

    /// Per-atom `f(p/q)·q`.
    pub fn integrand(&self) -> Result<Vec<f64>> {
        self.p.values().iter().zip(self.q.values()).map(|(p, q)| Ok(self.generator.eval(p / q)? * q)).collect()
    }

    /// Per-atom `f*(q/p)·p`; pointwise equal to [`integrand`](Self::integrand).
    pub fn adjoint_integrand(&self) -> Result<Vec<f64>> {
        let adj = self.generator.adjoint();
        self.p.values().iter().zip(self.q.values()).map(|(p, q)| Ok(adj.eval(q / p)? * p)).collect()
    }

    /// `(f*, Q, P)`.
    pub fn swapped(&self) -> PairTriple {
        PairTriple { generator: self.generator.adjoint(), p: self.q.clone(), q: self.p.clone() }
    }

    /// `(f, Q, P)`: same generator, distributions exchanged.
    pub fn reversed(&self) -> PairTriple {
        PairTriple { generator: self.generator.clone(), p: self.q.clone(), q: self.p.clone() }
    }

    fn shares_space(&self, other: &PairTriple) -> bool {
        self.p.same_space(&other.p)
    }
}

/// Two pairs and a real index `i` for the i-th mixed divergence with
/// ambient exponent base `n`.
#[derive(Debug, Clone)]
pub struct IthMixedSpec {
    pub pair1: PairTriple,
    pub pair2: PairTriple,
    pub i: f64,
    pub n: u32,
}

impl IthMixedSpec {
    pub fn new(pair1: PairTriple, pair2: PairTriple, i: f64, n: u32) -> Result<Self> {
        if !pair1.shares_space(&pair2) {
            return Err(Error::SpaceMismatch);
        }
        if n == 0 {
            return Err(Error::MixedArityZero);
        }
        if !i.is_finite() {
            return Err(Error::IndexOutOfRange { index: i, min: f64::MIN, max: f64::MAX });
        }
        Ok(Self { pair1, pair2, i, n })
    }

    pub fn with_index(&self, i: f64) -> Self {
        Self { i, ..self.clone() }
    }

    /// `(f₂, f₁)`, `((P₂,Q₂), (P₁,Q₁))`, index `n − i`.
    pub fn dual(&self) -> Self {
        Self { pair1: self.pair2.clone(), pair2: self.pair1.clone(), i: self.n as f64 - self.i, n: self.n }
    }
}

/// `∫ Πₖ xₖ^{eₖ} dμ` for per-atom factor values `xₖ ≥ 0`.
///
/// Factors with exponent zero contribute 1 (so `0⁰ = 1`); a zero factor with a
/// positive exponent zeroes the atom; a zero factor with a negative exponent
/// is an error.
pub(crate) fn product_integral(space: &MeasureSpace, factors: &[(&[f64], f64)]) -> Result<f64> {
    for (values, _) in factors {
        space.check_len(values.len())?;
    }
    let mut terms = Vec::with_capacity(space.len());
    for (j, weight) in space.weights().iter().enumerate() {
        let mut log_sum = 0.0;
        let mut vanishes = false;
        for &(values, e) in factors {
            if e == 0.0 {
                continue;
            }
            let x = values[j];
            if !(x >= 0.0 && x.is_finite()) {
                return Err(Error::NonFiniteValue { index: j, value: x });
            }
            if x == 0.0 {
                if e < 0.0 {
                    return Err(Error::SingularIntegrand { atom: j });
                }
                vanishes = true;
            } else {
                log_sum += e * ln(x);
            }
        }
        if !vanishes {
            terms.push(exp(log_sum) * weight);
        }
    }
    Ok(canonical_sum(terms))
}

fn check_shared(triples: &[PairTriple]) -> Result<()> {
    let first = triples.first().ok_or(Error::MixedArityZero)?;
    if triples.iter().any(|t| !t.shares_space(first)) {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// Classical f-divergence `∫ f(p/q)·q dμ`.
pub fn f_divergence(g: &Generator, p: &Density, q: &Density) -> Result<f64> {
    if !p.same_space(q) {
        return Err(Error::SpaceMismatch);
    }
    let terms = p
        .values()
        .iter()
        .zip(q.values())
        .zip(p.space().weights())
        .map(|((p, q), w)| Ok(g.eval(p / q)? * q * w))
        .collect::<Result<Vec<_>>>()?;
    Ok(canonical_sum(terms))
}

/// Mixed f-divergence `∫ Πᵢ [fᵢ(pᵢ/qᵢ)·qᵢ]^{1/n} dμ`.
pub fn mixed_divergence(triples: &[PairTriple]) -> Result<f64> {
    mixed_divergence_k(triples, triples.len())
}

/// Mixed divergence with the last `n − k` coordinates written through their
/// adjoints: `∫ Π_{i≤k}[fᵢ(pᵢ/qᵢ)qᵢ]^{1/n} · Π_{i>k}[fᵢ*(qᵢ/pᵢ)pᵢ]^{1/n} dμ`.
///
/// Mathematically independent of `k`.
pub fn mixed_divergence_k(triples: &[PairTriple], k: usize) -> Result<f64> {
    check_shared(triples)?;
    let n = triples.len();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k as f64, min: 0.0, max: n as f64 });
    }
    let values = triples
        .iter()
        .enumerate()
        .map(|(idx, t)| if idx < k { t.integrand() } else { t.adjoint_integrand() })
        .collect::<Result<Vec<_>>>()?;
    let e = 1.0 / n as f64;
    let factors: Vec<(&[f64], f64)> = values.iter().map(|v| (v.as_slice(), e)).collect();
    product_integral(triples[0].space(), &factors)
}

/// i-th mixed divergence `∫ [f₁(p₁/q₁)q₁]^{i/n} [f₂(p₂/q₂)q₂]^{(n−i)/n} dμ`
/// for any real `i`.
pub fn ith_mixed(spec: &IthMixedSpec) -> Result<f64> {
    if !spec.pair1.shares_space(&spec.pair2) {
        return Err(Error::SpaceMismatch);
    }
    let n = spec.n as f64;
    let x1 = spec.pair1.integrand()?;
    let x2 = spec.pair2.integrand()?;
    product_integral(spec.pair1.space(), &[(&x1, spec.i / n), (&x2, (n - spec.i) / n)])
}

/// The i-th mixed divergence with `P₂ = Q₂ = μ` (μ a probability measure):
/// `f₂(1)^{1−i/n} ∫ [f₁(p₁/q₁)q₁]^{i/n} dμ`.
pub fn ith_mixed_reference(pair1: &PairTriple, i: f64, n: u32, f2: &Generator) -> Result<f64> {
    let space = pair1.space();
    let mass = space.total_mass();
    if (mass - 1.0).abs() > EPS_NORM {
        return Err(Error::ReferenceNotProbability { mass });
    }
    if n == 0 {
        return Err(Error::MixedArityZero);
    }
    let n = n as f64;
    let x1 = pair1.integrand()?;
    let integral = product_integral(space, &[(&x1, i / n)])?;
    let f2_one = f2.eval(1.0)?;
    let e = 1.0 - i / n;
    if f2_one == 0.0 && e < 0.0 {
        return Err(Error::SingularIntegrand { atom: 0 });
    }
    Ok(powf(f2_one, e) * integral)
}

/// f-dissimilarity `∫ 𝐟(p₁,…,p_l) dμ`.
pub fn f_dissimilarity(g: &MultivariateGenerator, densities: &MeasureVector) -> Result<f64> {
    if g.arity() != densities.len() {
        return Err(Error::ArityMismatch { expected: g.arity(), found: densities.len() });
    }
    let space = densities.space();
    let mut point = Vec::with_capacity(densities.len());
    let mut terms = Vec::with_capacity(space.len());
    for (j, w) in space.weights().iter().enumerate() {
        point.clear();
        point.extend(densities.densities().iter().map(|d| d.values()[j]));
        terms.push(g.eval(&point)? * w);
    }
    Ok(canonical_sum(terms))
}

// Named families.

fn triples_for(pairs: &[(Density, Density)], gens: impl Iterator<Item = Generator>) -> Result<Vec<PairTriple>> {
    pairs.iter().zip(gens).map(|((p, q), g)| PairTriple::new(g, p.clone(), q.clone())).collect()
}

fn ith_spec(
    g1: Generator,
    g2: Generator,
    pair1: (&Density, &Density),
    pair2: (&Density, &Density),
    i: f64,
    n: u32,
) -> Result<IthMixedSpec> {
    IthMixedSpec::new(
        PairTriple::new(g1, pair1.0.clone(), pair1.1.clone())?,
        PairTriple::new(g2, pair2.0.clone(), pair2.1.clone())?,
        i,
        n,
    )
}

/// `∫ Πᵢ |pᵢ − qᵢ|^{1/n} dμ`
pub fn mixed_total_variation(pairs: &[(Density, Density)]) -> Result<f64> {
    mixed_divergence(&triples_for(pairs, core::iter::repeat(Generator::total_variation()))?)
}

/// `∫ Πᵢ [pᵢ ln(pᵢ/qᵢ)]₊^{1/n} dμ`
pub fn mixed_kl(pairs: &[(Density, Density)]) -> Result<f64> {
    mixed_divergence(&triples_for(pairs, core::iter::repeat(Generator::kl_positive_part()))?)
}

/// `∫ Πᵢ pᵢ^{αᵢ/n} qᵢ^{(1−αᵢ)/n} dμ`
pub fn mixed_hellinger(pairs: &[(Density, Density)], alphas: &[f64]) -> Result<f64> {
    if alphas.len() != pairs.len() {
        return Err(Error::LengthMismatch { expected: pairs.len(), found: alphas.len() });
    }
    let gens = alphas.iter().map(|a| Generator::power(*a)).collect::<Result<Vec<_>>>()?;
    mixed_divergence(&triples_for(pairs, gens.into_iter())?)
}

/// `∫ Πᵢ (pᵢqᵢ)^{1/(2n)} dμ`
pub fn mixed_bhattacharyya(pairs: &[(Density, Density)]) -> Result<f64> {
    mixed_divergence(&triples_for(pairs, core::iter::repeat(Generator::sqrt()))?)
}

/// `(1/(α−1)) ln` of the mixed Hellinger integral with all exponents `α`.
pub fn mixed_renyi(pairs: &[(Density, Density)], alpha: f64) -> Result<f64> {
    if alpha == 1.0 {
        return Err(Error::RenyiAlphaOne);
    }
    let alphas = alloc::vec![alpha; pairs.len()];
    Ok(ln(mixed_hellinger(pairs, &alphas)?) / (alpha - 1.0))
}

pub fn ith_total_variation(pair1: (&Density, &Density), pair2: (&Density, &Density), i: f64, n: u32) -> Result<f64> {
    ith_mixed(&ith_spec(Generator::total_variation(), Generator::total_variation(), pair1, pair2, i, n)?)
}

pub fn ith_kl(pair1: (&Density, &Density), pair2: (&Density, &Density), i: f64, n: u32) -> Result<f64> {
    ith_mixed(&ith_spec(Generator::kl_positive_part(), Generator::kl_positive_part(), pair1, pair2, i, n)?)
}

pub fn ith_hellinger(
    pair1: (&Density, &Density),
    pair2: (&Density, &Density),
    alphas: (f64, f64),
    i: f64,
    n: u32,
) -> Result<f64> {
    ith_mixed(&ith_spec(Generator::power(alphas.0)?, Generator::power(alphas.1)?, pair1, pair2, i, n)?)
}

pub fn ith_bhattacharyya(pair1: (&Density, &Density), pair2: (&Density, &Density), i: f64, n: u32) -> Result<f64> {
    ith_mixed(&ith_spec(Generator::sqrt(), Generator::sqrt(), pair1, pair2, i, n)?)
}

pub fn ith_renyi(pair1: (&Density, &Density), pair2: (&Density, &Density), alpha: f64, i: f64, n: u32) -> Result<f64> {
    if alpha == 1.0 {
        return Err(Error::RenyiAlphaOne);
    }
    Ok(ln(ith_hellinger(pair1, pair2, (alpha, alpha), i, n)?) / (alpha - 1.0))
}

pub(crate) fn spaces_match(a: &PairTriple, b: &PairTriple) -> bool {
    same_space(a.p.space(), b.p.space())
}
