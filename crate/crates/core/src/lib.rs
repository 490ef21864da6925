//! Mixed f-divergences for vectors of measures on finite measure spaces.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! - [`measure`]: finite atomic measure spaces, densities and integration.
//! - [`generator`]: the generating functions `f`, their `*`-adjoint
//!   `f*(t) = t f(1/t)` and multivariate generators for f-dissimilarities.
//! - [`divergence`]: classical, mixed, order-changed and i-th mixed
//!   f-divergences plus the named families (total variation, KL, Hellinger,
//!   Bhattacharyya, Rényi).
//! - [`audit`]: numerical verification of the Hölder/Jensen type inequalities
//!   satisfied by these functionals, with equality-case verdicts.
//! - [`geometry`]: cone measures of balls and ellipsoids on a discretized
//!   sphere, giving general (i-th) mixed affine surface areas.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod audit;
pub mod divergence;
mod error;
pub mod generator;
pub mod geometry;
mod math;
pub mod measure;
pub mod sum;

pub use divergence::{IthMixedSpec, PairTriple};
pub use error::{Error, Result};
pub use generator::{Generator, GeneratorKind, MultivariateGenerator, Shape};
pub use measure::{integrate, make_space, validate_density, Density, MeasureSpace, MeasureVector};

/// Absolute tolerance on `|∫p dμ − 1|` for a density to be certified as a
/// probability density.
pub const EPS_NORM: f64 = 1e-9;
