//! Generating functions `f: (0,∞) → [0,∞)` and their `*`-adjoints.
//!
//! A [`Generator`] carries its shape (convex, concave or linear), whether the
//! shape is strict, and whether it is strictly positive. The adjoint
//! `f*(t) = t·f(1/t)` is rewritten in closed form for the power, total
//! variation and linear families; other kinds are mirrored pointwise.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::math::{exp, ln, powf, sqrt};

/// Convexity class of a generator. `Linear` (affine) counts as both convex
/// and concave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Convex,
    Concave,
    Linear,
}

impl Shape {
    pub fn is_convex(self) -> bool {
        matches!(self, Shape::Convex | Shape::Linear)
    }

    pub fn is_concave(self) -> bool {
        matches!(self, Shape::Concave | Shape::Linear)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Convex => "convex",
            Shape::Concave => "concave",
            Shape::Linear => "linear",
        }
    }
}

pub type CustomFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type MultiFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum GeneratorKind {
    /// `|t − 1|`
    TotalVariation,
    /// `[t ln t]₊`
    KlPositivePart,
    /// `t^α`
    Power(f64),
    /// `a·t + b`
    Linear { a: f64, b: f64 },
    /// A user-supplied function with declared metadata.
    Custom { name: String, f: CustomFn, shape: Shape, strict: bool, positive: bool },
}

impl fmt::Debug for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TotalVariation => f.write_str("TotalVariation"),
            Self::KlPositivePart => f.write_str("KlPositivePart"),
            Self::Power(a) => f.debug_tuple("Power").field(a).finish(),
            Self::Linear { a, b } => f.debug_struct("Linear").field("a", a).field("b", b).finish(),
            Self::Custom { name, shape, strict, positive, .. } => f
                .debug_struct("Custom")
                .field("name", name)
                .field("shape", shape)
                .field("strict", strict)
                .field("positive", positive)
                .finish_non_exhaustive(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    kind: GeneratorKind,
    shape: Shape,
    strict: bool,
    positive: bool,
    adjoint_depth: u32,
    scale: f64,
    // evaluate as t·base(1/t); only used for kinds without a closed-form adjoint
    mirrored: bool,
}

/// Number of random midpoint probes used to check a custom generator's shape.
pub const SHAPE_PROBES: usize = 1000;

fn power_shape(alpha: f64) -> (Shape, bool) {
    if alpha == 0.0 || alpha == 1.0 {
        (Shape::Linear, false)
    } else if alpha > 0.0 && alpha < 1.0 {
        (Shape::Concave, true)
    } else {
        (Shape::Convex, true)
    }
}

/// Validates `kind` and attaches shape metadata.
pub fn make_generator(kind: GeneratorKind) -> Result<Generator> {
    let (shape, strict, positive) = match &kind {
        GeneratorKind::TotalVariation => (Shape::Convex, false, false),
        GeneratorKind::KlPositivePart => (Shape::Convex, false, false),
        GeneratorKind::Power(alpha) => {
            if !alpha.is_finite() {
                return Err(Error::InvalidParameter(format!("power exponent {alpha} is not finite")));
            }
            let (shape, strict) = power_shape(*alpha);
            (shape, strict, true)
        }
        GeneratorKind::Linear { a, b } => {
            let ok = a.is_finite() && b.is_finite() && *a >= 0.0 && *b >= 0.0 && (*a > 0.0 || *b > 0.0);
            if !ok {
                return Err(Error::InvalidLinear { a: *a, b: *b });
            }
            (Shape::Linear, false, true)
        }
        GeneratorKind::Custom { shape, strict, positive, .. } => (*shape, *strict, *positive),
    };
    let g = Generator { kind, shape, strict, positive, adjoint_depth: 0, scale: 1.0, mirrored: false };
    if matches!(g.kind, GeneratorKind::Custom { .. }) {
        g.verify_custom()?;
    }
    Ok(g)
}

impl Generator {
    pub fn total_variation() -> Self {
        Self::catalog(GeneratorKind::TotalVariation)
    }

    pub fn kl_positive_part() -> Self {
        Self::catalog(GeneratorKind::KlPositivePart)
    }

    pub fn power(alpha: f64) -> Result<Self> {
        make_generator(GeneratorKind::Power(alpha))
    }

    pub fn sqrt() -> Self {
        Self::catalog(GeneratorKind::Power(0.5))
    }

    pub fn linear(a: f64, b: f64) -> Result<Self> {
        make_generator(GeneratorKind::Linear { a, b })
    }

    /// A user-supplied generator. The declared shape is probed at
    /// [`SHAPE_PROBES`] random midpoints and rejected if contradicted.
    pub fn custom<F>(name: &str, f: F, shape: Shape, strict: bool, positive: bool) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        make_generator(GeneratorKind::Custom { name: name.into(), f: Arc::new(f), shape, strict, positive })
    }

    fn catalog(kind: GeneratorKind) -> Self {
        make_generator(kind).expect("catalog generator parameters are valid")
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Strict convexity/concavity on all of `(0,∞)`.
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// `f(t) > 0` for every `t > 0`.
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn adjoint_depth(&self) -> u32 {
        self.adjoint_depth
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    /// Positive multiple `λ·f`; shape, strictness and positivity carry over.
    pub fn scaled(&self, lambda: f64) -> Result<Generator> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("scale factor {lambda} must be positive")));
        }
        Ok(Generator { scale: self.scale * lambda, ..self.clone() })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Coefficients `(a, b)` of `a·t + b` when the generator is affine.
    pub fn linear_coefficients(&self) -> Option<(f64, f64)> {
        let (a, b) = match self.kind {
            GeneratorKind::Linear { a, b } => (a, b),
            GeneratorKind::Power(1.0) => (1.0, 0.0),
            GeneratorKind::Power(0.0) => (0.0, 1.0),
            _ => return None,
        };
        Some((self.scale * a, self.scale * b))
    }

    /// Human-readable name, e.g. `power(0.5)` or `adjoint(kl+)`.
    pub fn name(&self) -> String {
        let base = match &self.kind {
            GeneratorKind::TotalVariation => String::from("tv"),
            GeneratorKind::KlPositivePart => String::from("kl+"),
            GeneratorKind::Power(a) => format!("power({a})"),
            GeneratorKind::Linear { a, b } => format!("linear({a},{b})"),
            GeneratorKind::Custom { name, .. } => name.clone(),
        };
        let base = if self.mirrored { format!("adjoint({base})") } else { base };
        if self.scale == 1.0 {
            base
        } else {
            format!("{}*{base}", self.scale)
        }
    }

    /// The `*`-adjoint `t ↦ t·f(1/t)`.
    pub fn adjoint(&self) -> Generator {
        let mut out = self.clone();
        out.adjoint_depth = self.adjoint_depth + 1;
        match self.kind {
            GeneratorKind::TotalVariation => {}
            GeneratorKind::Power(alpha) => out.kind = GeneratorKind::Power(1.0 - alpha),
            GeneratorKind::Linear { a, b } => out.kind = GeneratorKind::Linear { a: b, b: a },
            GeneratorKind::KlPositivePart | GeneratorKind::Custom { .. } => out.mirrored = !self.mirrored,
        }
        out
    }

    /// `f(t)` for `t > 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::NonpositiveArgument(t));
        }
        let value = self.scale * self.raw(t);
        if value.is_nan() || value < 0.0 {
            return Err(Error::NegativeValue { t, value });
        }
        Ok(value)
    }

    fn raw(&self, t: f64) -> f64 {
        if self.mirrored {
            t * self.base(1.0 / t)
        } else {
            self.base(t)
        }
    }

    fn base(&self, t: f64) -> f64 {
        match &self.kind {
            GeneratorKind::TotalVariation => (t - 1.0).abs(),
            GeneratorKind::KlPositivePart => {
                if t > 1.0 {
                    t * ln(t)
                } else {
                    0.0
                }
            }
            GeneratorKind::Power(alpha) => {
                let alpha = *alpha;
                if alpha == 0.0 {
                    1.0
                } else if alpha == 1.0 {
                    t
                } else if alpha == 0.5 {
                    sqrt(t)
                } else if alpha == 2.0 {
                    t * t
                } else {
                    powf(t, alpha)
                }
            }
            GeneratorKind::Linear { a, b } => a * t + b,
            GeneratorKind::Custom { f, .. } => f(t),
        }
    }

    fn verify_custom(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let log_span = 10.0 * core::f64::consts::LN_2;
        for _ in 0..SHAPE_PROBES {
            let s = exp(rng.random_range(-log_span..log_span));
            let t = exp(rng.random_range(-log_span..log_span));
            let m = 0.5 * (s + t);
            let (fs, ft, fm) = (self.eval(s)?, self.eval(t)?, self.eval(m)?);
            if self.positive && (fs == 0.0 || ft == 0.0 || fm == 0.0) {
                return Err(Error::ShapeContradiction(format!("declared positive but vanishes near t={s}")));
            }
            let avg = 0.5 * (fs + ft);
            let tol = 1e-12 * avg.abs().max(1.0);
            if self.shape.is_convex() && fm > avg + tol {
                return Err(Error::ShapeContradiction(format!("declared convex but f({m}) = {fm} > {avg}")));
            }
            if self.shape.is_concave() && fm < avg - tol {
                return Err(Error::ShapeContradiction(format!("declared concave but f({m}) = {fm} < {avg}")));
            }
        }
        Ok(())
    }
}

/// Multivariate generator `𝐟: (0,∞)^l → ℝ` for the f-dissimilarity
/// `∫ 𝐟(p₁,…,p_l) dμ`.
#[derive(Clone)]
pub enum MultivariateGenerator {
    /// `−Π xᵢ^{1/l}`
    Matusita {
        arity: usize,
    },
    /// `−Π xᵢ^{aᵢ}` with `aᵢ ≥ 0`, `Σaᵢ = 1`
    Toussaint {
        weights: Vec<f64>,
    },
    /// `(x, y) ↦ y·f(x/y)`; its dissimilarity is the classical `D_f`.
    Lifted(Generator),
    Custom {
        name: String,
        arity: usize,
        f: MultiFn,
    },
}

impl fmt::Debug for MultivariateGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Matusita { arity } => f.debug_struct("Matusita").field("arity", arity).finish(),
            Self::Toussaint { weights } => f.debug_struct("Toussaint").field("weights", weights).finish(),
            Self::Lifted(g) => f.debug_tuple("Lifted").field(g).finish(),
            Self::Custom { name, arity, .. } => {
                f.debug_struct("Custom").field("name", name).field("arity", arity).finish_non_exhaustive()
            }
        }
    }
}

impl MultivariateGenerator {
    pub fn matusita(arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidParameter("matusita arity must be at least 1".into()));
        }
        Ok(Self::Matusita { arity })
    }

    pub fn toussaint(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return Err(Error::InvalidParameter("toussaint weights must be non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("toussaint weights sum to {total}, not 1")));
        }
        Ok(Self::Toussaint { weights })
    }

    pub fn lifted(g: Generator) -> Self {
        Self::Lifted(g)
    }

    pub fn custom<F>(name: &str, arity: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::Custom { name: name.into(), arity, f: Arc::new(f) }
    }

    pub fn arity(&self) -> usize {
        match self {
            Self::Matusita { arity } | Self::Custom { arity, .. } => *arity,
            Self::Toussaint { weights } => weights.len(),
            Self::Lifted(_) => 2,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Matusita { arity } => format!("matusita({arity})"),
            Self::Toussaint { weights } => format!("toussaint({weights:?})"),
            Self::Lifted(g) => format!("lifted({})", g.name()),
            Self::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, xs: &[f64]) -> Result<f64> {
        if xs.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: xs.len() });
        }
        if let Some((index, &value)) = xs.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::NonpositiveDensity { index, value });
        }
        let value = match self {
            Self::Matusita { arity } => {
                let w = 1.0 / *arity as f64;
                -exp(xs.iter().map(|x| w * ln(*x)).sum::<f64>())
            }
            Self::Toussaint { weights } => -exp(xs.iter().zip(weights).map(|(x, a)| a * ln(*x)).sum::<f64>()),
            Self::Lifted(g) => xs[1] * g.eval(xs[0] / xs[1])?,
            Self::Custom { f, .. } => f(xs),
        };
        if !value.is_finite() {
            return Err(Error::NonFiniteValue { index: 0, value });
        }
        Ok(value)
    }
}
