use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::ln;

/// Outcome of an effective-proportionality test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProportionalityVerdict {
    pub proportional: bool,
    /// Index of an identically zero input, if any.
    pub null_factor_index: Option<usize>,
    /// `max − min` of `ln|uⱼ| − ln|vⱼ|` over atoms where either is non-zero;
    /// infinite when exactly one of the two vanishes somewhere or signs differ.
    pub ratio_spread: f64,
}

fn is_null(u: &[f64]) -> bool {
    u.iter().all(|x| *x == 0.0)
}

fn log_ratio_spread(u: &[f64], v: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sign = 0.0;
    for (a, b) in u.iter().zip(v) {
        if *a == 0.0 && *b == 0.0 {
            continue;
        }
        if *a == 0.0 || *b == 0.0 {
            return f64::INFINITY;
        }
        let s = a.signum() * b.signum();
        if sign == 0.0 {
            sign = s;
        } else if s != sign {
            return f64::INFINITY;
        }
        let r = ln(a.abs()) - ln(b.abs());
        lo = lo.min(r);
        hi = hi.max(r);
    }
    if lo > hi {
        0.0
    } else {
        hi - lo
    }
}

/// Whether `a·u = b·v` for some `(a, b) ≠ (0, 0)`, up to a log-ratio spread
/// of `eps`. A null vector is proportional to anything.
pub fn effectively_proportional(u: &[f64], v: &[f64], eps: f64) -> Result<ProportionalityVerdict> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { expected: u.len(), found: v.len() });
    }
    for (i, w) in [u, v].into_iter().enumerate() {
        if is_null(w) {
            return Ok(ProportionalityVerdict { proportional: true, null_factor_index: Some(i), ratio_spread: 0.0 });
        }
    }
    let spread = log_ratio_spread(u, v);
    Ok(ProportionalityVerdict { proportional: spread <= eps, null_factor_index: None, ratio_spread: spread })
}

/// Pairwise effective proportionality of several functions; the reported
/// spread is the worst pair.
pub fn mutually_proportional(fs: &[Vec<f64>], eps: f64) -> Result<ProportionalityVerdict> {
    if let Some(first) = fs.first() {
        if let Some(bad) = fs.iter().find(|f| f.len() != first.len()) {
            return Err(Error::LengthMismatch { expected: first.len(), found: bad.len() });
        }
    }
    if let Some(idx) = fs.iter().position(|f| is_null(f)) {
        return Ok(ProportionalityVerdict { proportional: true, null_factor_index: Some(idx), ratio_spread: 0.0 });
    }
    let mut spread = 0.0f64;
    for a in 0..fs.len() {
        for b in a + 1..fs.len() {
            spread = spread.max(log_ratio_spread(&fs[a], &fs[b]));
        }
    }
    Ok(ProportionalityVerdict { proportional: spread <= eps, null_factor_index: None, ratio_spread: spread })
}

/// Pointwise equality up to `eps` relative.
pub(crate) fn approx_equal(a: &[f64], b: &[f64], eps: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= eps * x.abs().max(y.abs()))
}

/// Pointwise equality to a constant up to `eps` relative.
pub(crate) fn approx_constant(a: &[f64], c: f64, eps: f64) -> bool {
    a.iter().all(|x| (x - c).abs() <= eps * x.abs().max(c.abs()))
}
