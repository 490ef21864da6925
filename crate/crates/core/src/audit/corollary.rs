use alloc::format;
use alloc::vec::Vec;

use super::checks::densities_at_one;
use super::proportional::approx_equal;
use super::{AuditReport, EqualityBasis, Tolerances};
use crate::divergence::{ith_mixed, ith_mixed_reference, spaces_match, IthMixedSpec, PairTriple};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::math::powf;
use crate::EPS_NORM;

/// The isoperimetric-type bounds on `[D(·)]^n` obtained from log-convexity
/// of the i-th mixed divergence and Jensen's inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorollaryCase {
    /// `f₁, f₂` concave, `0 ≤ i ≤ n`: `[D(i)]^n ≤ f₁(1)^i f₂(1)^{n−i}`.
    ConcaveInterior,
    /// Reference measure, `f₁` concave, `0 ≤ i ≤ n`: `≤`.
    ReferenceConcave,
    /// `f₁` convex, `f₂` concave, `k ≥ n`: `[D(k)]^n ≥ f₁(1)^k f₂(1)^{n−k}`.
    ConvexConcaveAbove,
    /// Reference measure, `f₁` convex, `k ≥ n`: `≥`.
    ReferenceConvex,
    /// `f₁` concave, `f₂` convex, `k ≤ 0`: `≥`.
    ConcaveConvexBelow,
    /// Reference measure, `f₁` concave, `k ≤ 0`: `≥`.
    ReferenceConcaveBelow,
}

impl CorollaryCase {
    pub const ALL: [CorollaryCase; 6] = [
        CorollaryCase::ConcaveInterior,
        CorollaryCase::ReferenceConcave,
        CorollaryCase::ConvexConcaveAbove,
        CorollaryCase::ReferenceConvex,
        CorollaryCase::ConcaveConvexBelow,
        CorollaryCase::ReferenceConcaveBelow,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CorollaryCase::ConcaveInterior => "concave_0_i_n",
            CorollaryCase::ReferenceConcave => "ref_concave",
            CorollaryCase::ConvexConcaveAbove => "convex_concave_k_ge_n",
            CorollaryCase::ReferenceConvex => "ref_convex",
            CorollaryCase::ConcaveConvexBelow => "concave_convex_k_le_0",
            CorollaryCase::ReferenceConcaveBelow => "ref_concave_k_le_0",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn is_reference(self) -> bool {
        matches!(
            self,
            CorollaryCase::ReferenceConcave | CorollaryCase::ReferenceConvex | CorollaryCase::ReferenceConcaveBelow
        )
    }

    /// Whether the bound is an upper bound on `[D]^n`.
    pub fn is_upper(self) -> bool {
        matches!(self, CorollaryCase::ConcaveInterior | CorollaryCase::ReferenceConcave)
    }

    fn index_range(self, n: f64) -> (f64, f64) {
        match self {
            CorollaryCase::ConcaveInterior | CorollaryCase::ReferenceConcave => (0.0, n),
            CorollaryCase::ConvexConcaveAbove | CorollaryCase::ReferenceConvex => (n, f64::INFINITY),
            CorollaryCase::ConcaveConvexBelow | CorollaryCase::ReferenceConcaveBelow => (f64::NEG_INFINITY, 0.0),
        }
    }
}

/// Second argument of a corollary: a pair `(f₂, P₂, Q₂)`, or only `f₂` when
/// `P₂ = Q₂ = μ`.
#[derive(Debug, Clone)]
pub enum SecondArgument {
    Pair(PairTriple),
    Reference(Generator),
}

impl SecondArgument {
    pub fn generator(&self) -> &Generator {
        match self {
            SecondArgument::Pair(t) => &t.generator,
            SecondArgument::Reference(g) => g,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorollaryInputs {
    pub pair1: PairTriple,
    pub second: SecondArgument,
    /// `i` or `k`, depending on the case.
    pub index: f64,
    pub n: u32,
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(what.into()))
    }
}

/// Checks one corollary bound and its equality condition.
pub fn check_corollary(case: CorollaryCase, inputs: &CorollaryInputs, tol: Tolerances) -> Result<AuditReport> {
    let CorollaryInputs { pair1, second, index, n } = inputs;
    let (index, n_u) = (*index, *n);
    if n_u == 0 {
        return Err(Error::MixedArityZero);
    }
    let n = n_u as f64;
    let f1 = &pair1.generator;
    let f2 = second.generator();
    for (label, g) in [("f1", f1), ("f2", f2)] {
        if !g.is_positive() {
            return Err(Error::NonpositiveGenerator(format!("{label} = {}", g.name())));
        }
    }
    match case {
        CorollaryCase::ConcaveInterior => {
            require(f1.shape().is_concave() && f2.shape().is_concave(), "f1 and f2 must be concave")?
        }
        CorollaryCase::ConvexConcaveAbove => {
            require(f1.shape().is_convex() && f2.shape().is_concave(), "f1 must be convex and f2 concave")?
        }
        CorollaryCase::ConcaveConvexBelow => {
            require(f1.shape().is_concave() && f2.shape().is_convex(), "f1 must be concave and f2 convex")?
        }
        CorollaryCase::ReferenceConcave | CorollaryCase::ReferenceConcaveBelow => {
            require(f1.shape().is_concave(), "f1 must be concave")?
        }
        CorollaryCase::ReferenceConvex => require(f1.shape().is_convex(), "f1 must be convex")?,
    }
    let (lo, hi) = case.index_range(n);
    if !(index.is_finite() && lo <= index && index <= hi) {
        return Err(Error::IndexOutOfRange { index, min: lo, max: hi });
    }
    if !(pair1.p.is_probability() && pair1.q.is_probability()) {
        return Err(Error::ProbabilityRequired("pair 1 is not probability-certified".into()));
    }

    let value = match (case.is_reference(), second) {
        (false, SecondArgument::Pair(pair2)) => {
            if !(pair2.p.is_probability() && pair2.q.is_probability()) {
                return Err(Error::ProbabilityRequired("pair 2 is not probability-certified".into()));
            }
            if !spaces_match(pair1, pair2) {
                return Err(Error::SpaceMismatch);
            }
            ith_mixed(&IthMixedSpec::new(pair1.clone(), pair2.clone(), index, n_u)?)?
        }
        (true, SecondArgument::Reference(g2)) => {
            let mass = pair1.space().total_mass();
            if (mass - 1.0).abs() > EPS_NORM {
                return Err(Error::ReferenceNotProbability { mass });
            }
            ith_mixed_reference(pair1, index, n_u, g2)?
        }
        (true, _) => return Err(Error::InvalidParameter(format!("{} takes a reference generator", case.id()))),
        (false, _) => return Err(Error::InvalidParameter(format!("{} takes a second pair", case.id()))),
    };
    let powered = powf(value, n);
    let bound = powf(f1.eval(1.0)?, index) * powf(f2.eval(1.0)?, n - index);

    let (expected, basis) = predict_equality(case, pair1, second, index, n, tol.prop);
    let (lhs, rhs) = if case.is_upper() { (powered, bound) } else { (bound, powered) };
    let name = format!("corollary_{}", case.id());
    Ok(AuditReport::inequality(&name, lhs, rhs, tol, expected, basis)
        .with_detail("index", index)
        .with_detail("n", n)
        .with_detail("divergence", value))
}

fn single_pair_prediction(g: &Generator, pair: &PairTriple, eps: f64) -> (bool, EqualityBasis) {
    if g.linear_coefficients().is_some() {
        (true, EqualityBasis::Trivial)
    } else {
        let same = approx_equal(pair.p.values(), pair.q.values(), eps);
        (same, if g.is_strict() { EqualityBasis::Characterized } else { EqualityBasis::SufficientOnly })
    }
}

fn predict_equality(
    case: CorollaryCase,
    pair1: &PairTriple,
    second: &SecondArgument,
    index: f64,
    n: f64,
    eps: f64,
) -> (bool, EqualityBasis) {
    let f1 = &pair1.generator;
    match second {
        SecondArgument::Reference(_) => {
            if index == 0.0 {
                return (true, EqualityBasis::Trivial);
            }
            if index == n {
                return single_pair_prediction(f1, pair1, eps);
            }
            if let Some((a, b)) = f1.linear_coefficients() {
                let g: Vec<f64> = pair1.p.values().iter().zip(pair1.q.values()).map(|(p, q)| a * p + b * q).collect();
                let ok = g.iter().all(|x| (x - (a + b)).abs() <= eps * x.abs().max(a + b));
                return (ok, EqualityBasis::LinearRemark);
            }
            let at_mu = densities_at_one(&pair1.p, eps) && densities_at_one(&pair1.q, eps);
            (at_mu, if f1.is_strict() { EqualityBasis::Characterized } else { EqualityBasis::SufficientOnly })
        }
        SecondArgument::Pair(pair2) => {
            let f2 = &pair2.generator;
            if index == n {
                return single_pair_prediction(f1, pair1, eps);
            }
            if index == 0.0 {
                return single_pair_prediction(f2, pair2, eps);
            }
            if let (Some((a1, b1)), Some((a2, b2))) = (f1.linear_coefficients(), f2.linear_coefficients()) {
                let c1: Vec<f64> =
                    pair1.p.values().iter().zip(pair1.q.values()).map(|(p, q)| (a1 * p + b1 * q) / (a1 + b1)).collect();
                let c2: Vec<f64> =
                    pair2.p.values().iter().zip(pair2.q.values()).map(|(p, q)| (a2 * p + b2 * q) / (a2 + b2)).collect();
                return (approx_equal(&c1, &c2, eps), EqualityBasis::LinearRemark);
            }
            let p = pair1.p.values();
            let all_equal = approx_equal(pair1.q.values(), p, eps)
                && approx_equal(pair2.p.values(), p, eps)
                && approx_equal(pair2.q.values(), p, eps);
            let strict = f1.is_strict() && f2.is_strict();
            let _ = case;
            (all_equal, if strict { EqualityBasis::Characterized } else { EqualityBasis::SufficientOnly })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{make_space, validate_density};

    fn pairs(g1: Generator, g2: Generator) -> (PairTriple, PairTriple) {
        let s = make_space(&[1.0, 1.0]).unwrap();
        let d = |v: &[f64]| validate_density(&s, v, true).unwrap();
        (
            PairTriple::new(g1, d(&[0.5, 0.5]), d(&[0.25, 0.75])).unwrap(),
            PairTriple::new(g2, d(&[0.8, 0.2]), d(&[0.5, 0.5])).unwrap(),
        )
    }

    fn inputs(pair1: PairTriple, pair2: PairTriple, index: f64, n: u32) -> CorollaryInputs {
        CorollaryInputs { pair1, second: SecondArgument::Pair(pair2), index, n }
    }

    #[test]
    fn concave_interior_fixture() {
        let (a, b) = pairs(Generator::sqrt(), Generator::sqrt());
        let r = check_corollary(CorollaryCase::ConcaveInterior, &inputs(a, b, 1.0, 2), Tolerances::default()).unwrap();
        assert!(r.holds);
        assert!((r.lhs - 0.8334351100891314).abs() < 1e-14);
        assert_eq!(r.rhs, 1.0);
        assert!(!r.equality_expected);
    }

    #[test]
    fn convex_concave_at_k_equal_n_is_jensen() {
        let sq = Generator::power(2.0).unwrap();
        let (a, b) = pairs(sq.clone(), Generator::sqrt());
        let r =
            check_corollary(CorollaryCase::ConvexConcaveAbove, &inputs(a.clone(), b, 2.0, 2), Tolerances::default())
                .unwrap();
        let d = crate::divergence::f_divergence(&sq, &a.p, &a.q).unwrap();
        assert!(r.holds);
        assert!((r.rhs - d * d).abs() < 1e-14);
        assert_eq!(r.lhs, 1.0);
    }

    #[test]
    fn all_equal_densities_give_equality_everywhere() {
        let s = make_space(&[0.2, 0.3, 0.5]).unwrap();
        let p = validate_density(&s, &[1.5, 0.5, 1.1], true).unwrap();
        let one = validate_density(&s, &[1.0, 1.0, 1.0], true).unwrap();
        let cv = Generator::power(3.0).unwrap();
        let cc = Generator::power(0.25).unwrap();
        let tol = Tolerances::default();
        let t = |g: &Generator, d: &crate::measure::Density| PairTriple::new(g.clone(), d.clone(), d.clone()).unwrap();
        let cases = [
            (CorollaryCase::ConcaveInterior, t(&cc, &p), SecondArgument::Pair(t(&cc, &p)), 1.3),
            (CorollaryCase::ConvexConcaveAbove, t(&cv, &p), SecondArgument::Pair(t(&cc, &p)), 4.5),
            (CorollaryCase::ConcaveConvexBelow, t(&cc, &p), SecondArgument::Pair(t(&cv, &p)), -2.5),
            (CorollaryCase::ReferenceConcave, t(&cc, &one), SecondArgument::Reference(cv.clone()), 1.3),
            (CorollaryCase::ReferenceConvex, t(&cv, &one), SecondArgument::Reference(cc.clone()), 4.5),
            (CorollaryCase::ReferenceConcaveBelow, t(&cc, &one), SecondArgument::Reference(cv.clone()), -2.5),
        ];
        for (case, pair1, second, index) in cases {
            let r = check_corollary(case, &CorollaryInputs { pair1, second, index, n: 3 }, tol).unwrap();
            assert!(r.holds && r.equality_expected && r.equality_observed, "{case:?}: {r:?}");
            assert!(r.relative_slack() <= 1e-12, "{case:?}");
        }
    }

    #[test]
    fn reference_linear_condition() {
        let s = make_space(&[0.5, 0.5]).unwrap();
        // a p + b q = a + b with a = 1, b = 2: p = (1.2, 0.8), q = (0.9, 1.1)
        let p = validate_density(&s, &[1.2, 0.8], true).unwrap();
        let q = validate_density(&s, &[0.9, 1.1], true).unwrap();
        let pair = PairTriple::new(Generator::linear(1.0, 2.0).unwrap(), p, q).unwrap();
        let inputs =
            CorollaryInputs { pair1: pair, second: SecondArgument::Reference(Generator::sqrt()), index: 0.7, n: 2 };
        let r = check_corollary(CorollaryCase::ReferenceConcave, &inputs, Tolerances::default()).unwrap();
        assert_eq!(r.equality_basis, EqualityBasis::LinearRemark);
        assert!(r.equality_expected && r.equality_observed, "{r:?}");
    }

    #[test]
    fn precondition_errors() {
        let tol = Tolerances::default();
        let (a, b) = pairs(Generator::sqrt(), Generator::sqrt());
        let bad_index = inputs(a.clone(), b.clone(), 3.0, 2);
        assert!(matches!(
            check_corollary(CorollaryCase::ConcaveInterior, &bad_index, tol),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            check_corollary(CorollaryCase::ConvexConcaveAbove, &inputs(a.clone(), b.clone(), 3.0, 2), tol),
            Err(Error::ShapeMismatch(_))
        ));
        let (tv, b2) = pairs(Generator::total_variation(), Generator::sqrt());
        assert!(matches!(
            check_corollary(CorollaryCase::ConvexConcaveAbove, &inputs(tv, b2, 3.0, 2), tol),
            Err(Error::NonpositiveGenerator(_))
        ));
        assert!(matches!(
            check_corollary(CorollaryCase::ReferenceConcave, &inputs(a.clone(), b, 1.0, 2), tol),
            Err(Error::InvalidParameter(_))
        ));
        let r = CorollaryInputs { pair1: a, second: SecondArgument::Reference(Generator::sqrt()), index: 1.0, n: 2 };
        assert!(matches!(
            check_corollary(CorollaryCase::ReferenceConcave, &r, tol),
            Err(Error::ReferenceNotProbability { .. })
        ));
        assert_eq!(CorollaryCase::from_id("ref_convex"), Some(CorollaryCase::ReferenceConvex));
    }
}
