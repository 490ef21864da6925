//! Cone-measure densities of balls and ellipsoids on a discretized unit
//! sphere, and the mixed affine surface areas they induce.
//!
//! For a convex body `K` with support function `h_K` and curvature function
//! `f_K`, the measures `dP_K = h_K^{−n} dσ` and `dQ_K = f_K h_K dσ` turn mixed
//! f-divergences into general mixed affine surface areas.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::divergence::{ith_mixed, mixed_divergence, IthMixedSpec, PairTriple};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::math::{cos, powf, sin, sqrt};
use crate::measure::{Density, MeasureSpace};

/// Default resolution: 64 Gauss–Legendre rings × 128 azimuths on `S²`.
pub const DEFAULT_RESOLUTION: usize = 64;
pub const MIN_RESOLUTION: usize = 4;

/// Quadrature nodes and weights approximating the surface measure `σ`.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    dimension: usize,
    nodes: Vec<f64>,
    space: Arc<MeasureSpace>,
}

impl SphereGrid {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn node(&self, j: usize) -> &[f64] {
        &self.nodes[j * self.dimension..(j + 1) * self.dimension]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> {
        self.nodes.chunks_exact(self.dimension)
    }

    pub fn weights(&self) -> &[f64] {
        self.space.weights()
    }

    /// The grid as a measure space (weights are the quadrature weights).
    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }
}

/// Legendre nodes on `[−1, 1]` and their weights, by Newton iteration from
/// the Chebyshev-like initial guesses.
fn gauss_legendre(r: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = Vec::with_capacity(r);
    let mut w = Vec::with_capacity(r);
    for i in 0..r {
        let mut z = cos(PI * (i as f64 + 0.75) / (r as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=r {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pr = if r == 1 { z } else { p1 };
            let prev = if r == 1 { 1.0 } else { p0 };
            dp = r as f64 * (z * pr - prev) / (z * z - 1.0);
            let step = pr / dp;
            z -= step;
            if step.abs() <= 1e-16 {
                break;
            }
        }
        x.push(z);
        w.push(2.0 / ((1.0 - z * z) * dp * dp));
    }
    (x, w)
}

/// `n = 2`: `resolution` equally spaced angles with weight `2π/resolution`.
/// `n = 3`: `resolution` Gauss–Legendre rings in the polar cosine times
/// `2·resolution` equally spaced azimuths.
pub fn sphere_grid(n: usize, resolution: usize) -> Result<SphereGrid> {
    if !(n == 2 || n == 3) {
        return Err(Error::UnsupportedDimension(n));
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(alloc::format!(
            "resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    if n == 2 {
        let w = 2.0 * PI / resolution as f64;
        for j in 0..resolution {
            let phi = 2.0 * PI * j as f64 / resolution as f64;
            nodes.extend_from_slice(&[cos(phi), sin(phi)]);
            weights.push(w);
        }
    } else {
        let (zs, ws) = gauss_legendre(resolution);
        let azimuths = 2 * resolution;
        for (z, wz) in zs.iter().zip(&ws) {
            let rho = sqrt(1.0 - z * z);
            for j in 0..azimuths {
                let phi = 2.0 * PI * j as f64 / azimuths as f64;
                nodes.extend_from_slice(&[rho * cos(phi), rho * sin(phi), *z]);
                weights.push(wz * PI / resolution as f64);
            }
        }
    }
    Ok(SphereGrid { dimension: n, nodes, space: Arc::new(MeasureSpace::new(weights)?) })
}

/// Axis-aligned ellipsoid `Σ xᵢ²/aᵢ² ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipsoidBody {
    semi_axes: Vec<f64>,
}

impl EllipsoidBody {
    pub fn new(semi_axes: Vec<f64>) -> Result<Self> {
        if semi_axes.is_empty() {
            return Err(Error::InvalidParameter("ellipsoid needs at least one semi-axis".into()));
        }
        if let Some(a) = semi_axes.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(Error::InvalidParameter(alloc::format!("semi-axes must be positive, got {a}")));
        }
        Ok(Self { semi_axes })
    }

    pub fn ball(n: usize, radius: f64) -> Result<Self> {
        Self::new(alloc::vec![radius; n])
    }

    pub fn semi_axes(&self) -> &[f64] {
        &self.semi_axes
    }

    pub fn dimension(&self) -> usize {
        self.semi_axes.len()
    }

    /// `h(u) = √(Σ aᵢ² uᵢ²)`.
    pub fn support(&self, u: &[f64]) -> f64 {
        sqrt(self.semi_axes.iter().zip(u).map(|(a, x)| a * a * x * x).sum())
    }

    /// `f(u) = (Π aᵢ)² / h(u)^{n+1}`.
    pub fn curvature(&self, u: &[f64]) -> f64 {
        let prod: f64 = self.semi_axes.iter().product();
        prod * prod / powf(self.support(u), (self.dimension() + 1) as f64)
    }
}

/// `(p_K, q_K) = (h^{−n}, f·h)` on the grid, not normalized.
pub fn body_densities(body: &EllipsoidBody, grid: &SphereGrid) -> Result<(Density, Density)> {
    let n = grid.dimension();
    if body.dimension() != n {
        return Err(Error::DimensionMismatch { expected: n, found: body.dimension() });
    }
    let mut p = Vec::with_capacity(grid.len());
    let mut q = Vec::with_capacity(grid.len());
    for u in grid.nodes() {
        let h = body.support(u);
        p.push(powf(h, -(n as f64)));
        q.push(body.curvature(u) * h);
    }
    Ok((Density::new(grid.space().clone(), p, false)?, Density::new(grid.space().clone(), q, false)?))
}

fn body_triple(body: &EllipsoidBody, g: &Generator, grid: &SphereGrid) -> Result<PairTriple> {
    let (p, q) = body_densities(body, grid)?;
    PairTriple::new(g.clone(), p, q)
}

/// Mixed f-divergence of the cone measures of `n` bodies, `n` the grid
/// dimension.
pub fn mixed_affine_surface_area(bodies: &[EllipsoidBody], generators: &[Generator], grid: &SphereGrid) -> Result<f64> {
    let n = grid.dimension();
    if bodies.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: bodies.len() });
    }
    if generators.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: generators.len() });
    }
    let triples = bodies.iter().zip(generators).map(|(b, g)| body_triple(b, g, grid)).collect::<Result<Vec<_>>>()?;
    mixed_divergence(&triples)
}

/// i-th mixed f-divergence of the cone measures of two bodies.
pub fn ith_mixed_affine_surface_area(
    body1: &EllipsoidBody,
    body2: &EllipsoidBody,
    f1: &Generator,
    f2: &Generator,
    i: f64,
    grid: &SphereGrid,
) -> Result<f64> {
    let spec =
        IthMixedSpec::new(body_triple(body1, f1, grid)?, body_triple(body2, f2, grid)?, i, grid.dimension() as u32)?;
    ith_mixed(&spec)
}
