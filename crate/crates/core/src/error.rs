use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("measure space has no atoms")]
    EmptySpace,
    #[error("non-positive or non-finite weight {value} at atom {index}")]
    NonpositiveWeight { index: usize, value: f64 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-positive or non-finite density value {value} at atom {index}")]
    NonpositiveDensity { index: usize, value: f64 },
    #[error("density integrates to {integral}, not 1")]
    NotNormalized { integral: f64 },
    #[error("non-finite value {value} at index {index}")]
    NonFiniteValue { index: usize, value: f64 },
    #[error("densities live on different measure spaces")]
    SpaceMismatch,
    #[error("linear generator a*t + b needs a >= 0, b >= 0, not both zero (got a={a}, b={b})")]
    InvalidLinear { a: f64, b: f64 },
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("generator evaluated at non-positive argument {0}")]
    NonpositiveArgument(f64),
    #[error("generator returned {value} at t={t}; generators must be non-negative")]
    NegativeValue { t: f64, value: f64 },
    #[error("declared shape contradicted: {0}")]
    ShapeContradiction(String),
    #[error("mixed divergence needs at least one triple")]
    MixedArityZero,
    #[error("index {index} out of range [{min}, {max}]")]
    IndexOutOfRange { index: f64, min: f64, max: f64 },
    #[error("reference measure must be a probability measure (total mass {mass})")]
    ReferenceNotProbability { mass: f64 },
    #[error("arity mismatch: generator takes {expected} densities, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("Rényi divergence is undefined at alpha = 1")]
    RenyiAlphaOne,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator must be strictly positive: {0}")]
    NonpositiveGenerator(String),
    #[error("probability densities required: {0}")]
    ProbabilityRequired(String),
    #[error("degenerate indices: j and k coincide ({0})")]
    DegenerateIndices(f64),
    #[error("unsupported sphere dimension {0} (only 2 and 3)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero integrand factor raised to a negative power at atom {atom}")]
    SingularIntegrand { atom: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
