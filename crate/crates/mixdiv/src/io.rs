//! Measure data input.
//!
//! JSON: `{"mu":[…], "atoms":[…]?, "pairs":[{"p":[…],"q":[…],"f":{…}?}, …]}`.
//! A report document is accepted too; its `"input"` echo is read.
//!
//! CSV: header `atom,mu,p1,q1,…,pn,qn`, one row per atom.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use mixdiv_core::{Density, Error as CoreError, MeasureSpace, EPS_NORM};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct PairInput {
    pub p: Density,
    pub q: Density,
    /// Generator spec given with the pair, if any.
    pub generator: Option<Value>,
}

#[derive(Debug, Clone)]
pub struct LoadedInput {
    pub space: Arc<MeasureSpace>,
    pub pairs: Vec<PairInput>,
    pub warnings: Vec<String>,
}

impl LoadedInput {
    /// `p₁, q₁, …, pₙ, qₙ`.
    pub fn densities(&self) -> Vec<Density> {
        self.pairs.iter().flat_map(|p| [p.p.clone(), p.q.clone()]).collect()
    }
}

pub fn load_input(path: &Path, epsilon_floor: Option<f64>) -> Result<LoadedInput, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) || !text.trim_start().starts_with('{');
    if is_csv {
        parse_csv_input(&text, epsilon_floor)
    } else {
        parse_json_input(&text, epsilon_floor)
    }
}

fn number_array(v: &Value, location: &str) -> Result<Vec<f64>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::parse(location, "expected an array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, x)| x.as_f64().ok_or_else(|| CliError::parse(format!("{location}[{i}]"), "expected a number")))
        .collect()
}

pub fn parse_json_input(text: &str, epsilon_floor: Option<f64>) -> Result<LoadedInput, CliError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| CliError::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let doc = match (root.get("mu"), root.get("input")) {
        (None, Some(echo)) if echo.is_object() => echo,
        _ => &root,
    };
    if !doc.is_object() {
        return Err(CliError::parse("document", "expected a JSON object"));
    }
    let mu = number_array(doc.get("mu").ok_or_else(|| CliError::parse("mu", "mu required"))?, "mu")?;
    let ids = match doc.get("atoms") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_array()
                .ok_or_else(|| CliError::parse("atoms", "expected an array"))?
                .iter()
                .enumerate()
                .map(|(i, a)| match a {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(CliError::parse(format!("atoms[{i}]"), "expected a string")),
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let space = build_space(ids, mu)?;
    let pairs_v = doc
        .get("pairs")
        .ok_or_else(|| CliError::parse("pairs", "pairs required"))?
        .as_array()
        .ok_or_else(|| CliError::parse("pairs", "expected an array"))?;
    if pairs_v.is_empty() {
        return Err(CliError::parse("pairs", "at least one pair required"));
    }
    let mut warnings = Vec::new();
    let mut pairs = Vec::with_capacity(pairs_v.len());
    for (k, pair) in pairs_v.iter().enumerate() {
        let loc = format!("pairs[{k}]");
        let field = |name: &str| -> Result<Vec<f64>, CliError> {
            let v = pair.get(name).ok_or_else(|| CliError::parse(&loc, format!("{name} required")))?;
            number_array(v, &format!("{loc}.{name}"))
        };
        let p = density(&space, field("p")?, epsilon_floor, &format!("{loc}.p"), &mut warnings)?;
        let q = density(&space, field("q")?, epsilon_floor, &format!("{loc}.q"), &mut warnings)?;
        let generator = match pair.get("f") {
            None | Some(Value::Null) => None,
            Some(f) => Some(f.clone()),
        };
        pairs.push(PairInput { p, q, generator });
    }
    Ok(LoadedInput { space, pairs, warnings })
}

pub fn parse_csv_input(text: &str, epsilon_floor: Option<f64>) -> Result<LoadedInput, CliError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::parse("line 1", e.to_string()))?
        .iter()
        .map(str::to_ascii_lowercase)
        .collect();
    if header.len() < 4 || header[0] != "atom" || header[1] != "mu" || !header.len().is_multiple_of(2) {
        return Err(CliError::parse("line 1", "header must be atom,mu,p1,q1,...,pn,qn"));
    }
    let npairs = (header.len() - 2) / 2;
    for k in 0..npairs {
        let (ep, eq) = (format!("p{}", k + 1), format!("q{}", k + 1));
        if header[2 + 2 * k] != ep || header[3 + 2 * k] != eq {
            return Err(CliError::parse("line 1", format!("expected columns {ep},{eq}")));
        }
    }
    let mut ids = Vec::new();
    let mut mu = Vec::new();
    let mut columns = vec![Vec::new(); 2 * npairs];
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::parse(format!("line {line}"), e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != header.len() {
            return Err(CliError::parse(
                format!("line {line}"),
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        ids.push(record[0].to_string());
        for (c, field) in record.iter().enumerate().skip(1) {
            let x: f64 = field.parse().map_err(|_| {
                CliError::parse(format!("line {line}, column {}", header[c]), format!("'{field}' is not a number"))
            })?;
            if c == 1 {
                mu.push(x);
            } else {
                columns[c - 2].push(x);
            }
        }
    }
    if mu.is_empty() {
        return Err(CliError::parse("line 2", "no data rows"));
    }
    let space = build_space(Some(ids), mu)?;
    let mut warnings = Vec::new();
    let mut pairs = Vec::with_capacity(npairs);
    let mut cols = columns.into_iter();
    for k in 1..=npairs {
        let p = density(&space, cols.next().unwrap_or_default(), epsilon_floor, &format!("p{k}"), &mut warnings)?;
        let q = density(&space, cols.next().unwrap_or_default(), epsilon_floor, &format!("q{k}"), &mut warnings)?;
        pairs.push(PairInput { p, q, generator: None });
    }
    Ok(LoadedInput { space, pairs, warnings })
}

fn build_space(ids: Option<Vec<String>>, mu: Vec<f64>) -> Result<Arc<MeasureSpace>, CliError> {
    let space = match ids {
        Some(ids) => MeasureSpace::with_ids(ids, mu),
        None => MeasureSpace::new(mu),
    };
    let space = space.map_err(|e| match e {
        CoreError::NonpositiveWeight { index, .. } => CliError::validation(format!("mu[{index}]"), e),
        CoreError::LengthMismatch { .. } => CliError::validation("atoms", e),
        _ => CliError::validation("mu", e),
    })?;
    Ok(Arc::new(space))
}

/// Validates one density, applying the epsilon floor and attempting
/// probability certification.
fn density(
    space: &Arc<MeasureSpace>,
    mut values: Vec<f64>,
    epsilon_floor: Option<f64>,
    location: &str,
    warnings: &mut Vec<String>,
) -> Result<Density, CliError> {
    let locate = |e: CoreError| match e {
        CoreError::NonpositiveDensity { index, .. } | CoreError::NonFiniteValue { index, .. } => {
            let atom = space.atom_ids().get(index).cloned().unwrap_or_else(|| index.to_string());
            CliError::validation(format!("{location}, atom {atom}"), e)
        }
        _ => CliError::validation(location, e),
    };
    if let Some(floor) = epsilon_floor {
        if !(floor.is_finite() && floor > 0.0) {
            return Err(CliError::Job(format!("--epsilon-floor must be positive, got {floor}")));
        }
        let raw_integral = space.integrate(&values).map_err(locate)?;
        let zeros = values.iter().filter(|v| **v == 0.0).count();
        if zeros > 0 {
            values.iter_mut().filter(|v| **v == 0.0).for_each(|v| *v = floor);
            if (raw_integral - 1.0).abs() <= EPS_NORM {
                let total = space.integrate(&values).map_err(locate)?;
                values.iter_mut().for_each(|v| *v /= total);
            }
            warnings.push(format!("{location}: {zeros} zero value(s) replaced by {floor}"));
        }
    }
    match Density::new(space.clone(), values.clone(), true) {
        Ok(d) => Ok(d),
        Err(CoreError::NotNormalized { integral }) => {
            warnings.push(format!("{location}: integrates to {integral}, treated as a non-probability density"));
            Density::new(space.clone(), values, false).map_err(locate)
        }
        Err(e) => Err(locate(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_two_atom_fixture() {
        let input = parse_json_input(r#"{"mu":[1,1],"pairs":[{"p":[0.5,0.5],"q":[0.25,0.75]}]}"#, None).unwrap();
        assert_eq!(input.pairs.len(), 1);
        assert!(input.pairs[0].p.is_probability() && input.pairs[0].q.is_probability());
        assert!(input.warnings.is_empty());
    }

    #[test]
    fn json_errors_are_located() {
        let e = parse_json_input(r#"{"pairs":[]}"#, None).unwrap_err();
        assert!(matches!(&e, CliError::Parse { location, message } if location == "mu" && message == "mu required"));
        let e = parse_json_input(r#"{"mu":[1,1],"pairs":[{"p":[0.5,"x"],"q":[0.5,0.5]}]}"#, None).unwrap_err();
        assert!(matches!(&e, CliError::Parse { location, .. } if location == "pairs[0].p[1]"));
        let e = parse_json_input(r#"{"mu":[1,-1],"pairs":[{"p":[0.5,0.5],"q":[0.5,0.5]}]}"#, None).unwrap_err();
        assert!(matches!(&e, CliError::Validation { location, .. } if location == "mu[1]"));
        let e = parse_json_input(r#"{"mu":[1,1"#, None).unwrap_err();
        assert!(matches!(e, CliError::Parse { .. }));
    }

    #[test]
    fn uncertified_fallback_warns() {
        let input = parse_json_input(r#"{"mu":[1,1],"pairs":[{"p":[1,1],"q":[0.5,0.5]}]}"#, None).unwrap();
        assert!(!input.pairs[0].p.is_probability());
        assert!(input.pairs[0].q.is_probability());
        assert_eq!(input.warnings.len(), 1);
    }

    #[test]
    fn csv_zero_density() {
        let text = "atom,mu,p1,q1\na,0.5,0,0.5\nb,0.5,2,1.5\n";
        let e = parse_csv_input(text, None).unwrap_err();
        assert!(matches!(&e, CliError::Validation { location, source: CoreError::NonpositiveDensity { .. } }
            if location == "p1, atom a"));
        let input = parse_csv_input(text, Some(1e-6)).unwrap();
        let p = input.pairs[0].p.values();
        assert!(input.pairs[0].p.is_probability());
        assert!(p[0] > 0.0 && (0.5 * p[0] + 0.5 * p[1] - 1.0).abs() < 1e-15);
        assert_eq!(input.warnings.len(), 1);
        assert_eq!(input.space.atom_ids(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn csv_header_and_rows() {
        assert!(matches!(parse_csv_input("atom,mu,p1\n", None), Err(CliError::Parse { .. })));
        let e = parse_csv_input("atom,mu,p1,q1\na,1,x,1\n", None).unwrap_err();
        assert!(matches!(&e, CliError::Parse { location, .. } if location == "line 2, column p1"));
        let input = parse_csv_input("atom,mu,p1,q1,p2,q2\na,1,0.5,0.25,0.8,0.5\nb,1,0.5,0.75,0.2,0.5\n", None).unwrap();
        assert_eq!(input.pairs.len(), 2);
        assert_eq!(input.densities().len(), 4);
    }
}
