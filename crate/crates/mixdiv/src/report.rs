//! JSON report records.
//!
//! Every floating-point value is written with 17 significant digits, which
//! round-trips any IEEE double; non-finite values become `null`.

use mixdiv_core::audit::{AuditReport, EqualityBasis, Relation, Tolerances};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use serde_json::Value;

use crate::io::LoadedInput;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn render(self) -> Option<String> {
        self.0.is_finite().then(|| format!("{:.16e}", self.0))
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.render() {
            Some(text) => RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s),
            None => s.serialize_none(),
        }
    }
}

pub fn nums(values: &[f64]) -> Vec<Num> {
    values.iter().copied().map(Num).collect()
}

#[derive(Debug, Serialize)]
pub struct ToleranceRecord {
    pub ineq: Num,
    pub eq: Num,
    pub prop: Num,
}

impl From<Tolerances> for ToleranceRecord {
    fn from(t: Tolerances) -> Self {
        Self { ineq: Num(t.ineq), eq: Num(t.eq), prop: Num(t.prop) }
    }
}

#[derive(Debug, Serialize)]
pub struct DetailRecord {
    pub label: String,
    pub value: Num,
}

#[derive(Debug, Serialize)]
pub struct AuditRecord {
    pub name: String,
    pub family: String,
    pub instance: usize,
    pub relation: &'static str,
    pub lhs: Num,
    pub rhs: Num,
    pub slack: Num,
    pub holds: bool,
    pub equality_expected: bool,
    pub equality_observed: bool,
    pub equality_basis: &'static str,
    pub tolerances: ToleranceRecord,
    pub detail: Vec<DetailRecord>,
    pub warnings: Vec<String>,
}

fn relation_str(r: Relation) -> &'static str {
    match r {
        Relation::LessEq => "less_eq",
        Relation::Equal => "equal",
    }
}

fn basis_str(b: EqualityBasis) -> &'static str {
    match b {
        EqualityBasis::Trivial => "trivial",
        EqualityBasis::Characterized => "characterized",
        EqualityBasis::LinearRemark => "linear_remark",
        EqualityBasis::SufficientOnly => "sufficient_only",
    }
}

impl From<&AuditReport> for AuditRecord {
    fn from(r: &AuditReport) -> Self {
        Self {
            name: r.name.clone(),
            family: r.family.clone(),
            instance: r.instance,
            relation: relation_str(r.relation),
            lhs: Num(r.lhs),
            rhs: Num(r.rhs),
            slack: Num(r.slack),
            holds: r.holds,
            equality_expected: r.equality_expected,
            equality_observed: r.equality_observed,
            equality_basis: basis_str(r.equality_basis),
            tolerances: r.tolerances.into(),
            detail: r.detail.iter().map(|d| DetailRecord { label: d.label.clone(), value: Num(d.value) }).collect(),
            warnings: r.warnings.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PairEcho {
    pub p: Vec<Num>,
    pub q: Vec<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Value>,
}

/// The validated input, in the JSON input schema.
#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub atoms: Vec<String>,
    pub mu: Vec<Num>,
    pub pairs: Vec<PairEcho>,
}

impl From<&LoadedInput> for InputEcho {
    fn from(input: &LoadedInput) -> Self {
        Self {
            atoms: input.space.atom_ids().to_vec(),
            mu: nums(input.space.weights()),
            pairs: input
                .pairs
                .iter()
                .map(|p| PairEcho { p: nums(p.p.values()), q: nums(p.q.values()), f: p.generator.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(serde_json::to_string(&Num(0.5)).unwrap(), "5.0000000000000000e-1");
        assert_eq!(serde_json::to_string(&Num(f64::NAN)).unwrap(), "null");
        for x in [0.1, 1.0 / 3.0, 4.0 * std::f64::consts::PI * 6f64.sqrt(), 5e-324, f64::MAX, -2.5e-300] {
            let text = serde_json::to_string(&Num(x)).unwrap();
            assert_eq!(text.parse::<f64>().unwrap(), x);
            let back: f64 = serde_json::from_str(&text).unwrap();
            assert_eq!(back, x);
        }
    }
}
