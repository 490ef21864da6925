//! Numerical audits of the identities and inequalities satisfied by mixed
//! f-divergences.
//!
//! Each check evaluates both sides with the divergence engine and returns an
//! [`AuditReport`] stating whether the relation holds at the configured
//! tolerance and whether equality was predicted and observed.
//!
//! Equality predictions are one-directional: a report predicts equality only
//! when a sufficient condition is detected numerically. Equality observed
//! without a detected condition is recorded as a warning.

mod checks;
mod corollary;
mod proportional;
mod suite;

use alloc::string::String;
use alloc::vec::Vec;

pub use checks::{build_nk, check_alexandrov_fenchel, check_concave_upper, check_interpolation, check_jensen_bound};
pub use corollary::{check_corollary, CorollaryCase, CorollaryInputs, SecondArgument};
pub use proportional::{effectively_proportional, mutually_proportional, ProportionalityVerdict};
pub use suite::{audit_suite, AuditConfig, InstanceSampler, Pool};

/// Tolerances used by every check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative slack allowed before an inequality counts as violated.
    pub ineq: f64,
    /// Relative `|slack|` below which equality counts as observed.
    pub eq: f64,
    /// Log-ratio spread below which two functions count as proportional.
    pub prop: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { ineq: 1e-12, eq: 1e-10, prop: 1e-8 }
    }
}

/// How a report relates its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `lhs ≤ rhs`; statements of the form `a ≥ b` are stored as `b ≤ a`.
    LessEq,
    /// `lhs = rhs` up to `ε_ineq` relative.
    Equal,
}

/// What the equality prediction rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityBasis {
    /// Identities, endpoint indices and linear generators: equality always.
    Trivial,
    /// Characterized equality condition (proportionality or strictness).
    Characterized,
    /// Convex-combination condition stated for linear generators without proof.
    LinearRemark,
    /// Only a sufficient condition is known; absence of equality is not predicted.
    SufficientOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Detail {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub name: String,
    /// Set by [`audit_suite`]; empty for direct calls.
    pub family: String,
    pub instance: usize,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
    pub holds: bool,
    pub equality_expected: bool,
    pub equality_observed: bool,
    pub equality_basis: EqualityBasis,
    pub tolerances: Tolerances,
    pub detail: Vec<Detail>,
    pub warnings: Vec<String>,
}

fn rel_scale(lhs: f64, rhs: f64) -> f64 {
    lhs.abs().max(rhs.abs())
}

impl AuditReport {
    /// `lhs ≤ rhs`: holds iff `slack ≥ −ε_ineq·max(1, |rhs|)`.
    pub fn inequality(
        name: &str,
        lhs: f64,
        rhs: f64,
        tol: Tolerances,
        equality_expected: bool,
        equality_basis: EqualityBasis,
    ) -> Self {
        let slack = rhs - lhs;
        let holds = slack >= -tol.ineq * rhs.abs().max(1.0);
        let equality_observed = holds && slack.abs() <= tol.eq * rel_scale(lhs, rhs);
        Self::assemble(
            name,
            Relation::LessEq,
            lhs,
            rhs,
            slack,
            holds,
            equality_expected,
            equality_observed,
            equality_basis,
            tol,
        )
    }

    /// `lhs = rhs`: holds iff `|slack| ≤ ε_ineq·max(|lhs|, |rhs|)`.
    pub fn identity(name: &str, lhs: f64, rhs: f64, tol: Tolerances) -> Self {
        let slack = rhs - lhs;
        let holds = slack.abs() <= tol.ineq * rel_scale(lhs, rhs);
        Self::assemble(name, Relation::Equal, lhs, rhs, slack, holds, true, holds, EqualityBasis::Trivial, tol)
    }

    /// A report for a check that could not be evaluated.
    pub fn failed(name: &str, message: String, tol: Tolerances) -> Self {
        let mut r = Self::assemble(
            name,
            Relation::LessEq,
            f64::NAN,
            f64::NAN,
            f64::NAN,
            false,
            false,
            false,
            EqualityBasis::SufficientOnly,
            tol,
        );
        r.warnings.push(message);
        r
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: &str,
        relation: Relation,
        lhs: f64,
        rhs: f64,
        slack: f64,
        holds: bool,
        equality_expected: bool,
        equality_observed: bool,
        equality_basis: EqualityBasis,
        tolerances: Tolerances,
    ) -> Self {
        let mut warnings = Vec::new();
        if relation == Relation::LessEq && equality_observed && !equality_expected {
            warnings.push(String::from("equality observed but no equality condition detected"));
        }
        if relation == Relation::LessEq && equality_expected && !equality_observed {
            warnings.push(String::from("equality condition detected but equality not observed"));
        }
        Self {
            name: name.into(),
            family: String::new(),
            instance: 0,
            relation,
            lhs,
            rhs,
            slack,
            holds,
            equality_expected,
            equality_observed,
            equality_basis,
            tolerances,
            detail: Vec::new(),
            warnings,
        }
    }

    pub fn with_detail(mut self, label: &str, value: f64) -> Self {
        self.detail.push(Detail { label: label.into(), value });
        self
    }

    pub fn detail_value(&self, label: &str) -> Option<f64> {
        self.detail.iter().find(|d| d.label == label).map(|d| d.value)
    }

    /// Relative `|slack|` against `max(|lhs|, |rhs|)`.
    pub fn relative_slack(&self) -> f64 {
        let s = rel_scale(self.lhs, self.rhs);
        if s == 0.0 {
            0.0
        } else {
            self.slack.abs() / s
        }
    }
}
