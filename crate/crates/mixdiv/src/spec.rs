//! JSON generator and body specifications.
//!
//! Univariate generators:
//! `{"kind":"tv"}`, `{"kind":"kl+"}`, `{"kind":"power","alpha":0.5}`,
//! `{"kind":"sqrt"}`, `{"kind":"linear","a":1,"b":0}`, each optionally with
//! `"scale": λ` and `"adjoint": true`.
//!
//! Multivariate generators: `{"kind":"matusita"}`,
//! `{"kind":"toussaint","weights":[…]}`, `{"kind":"lifted","f":{…}}`.

use mixdiv_core::geometry::EllipsoidBody;
use mixdiv_core::{Generator, MultivariateGenerator};
use serde_json::Value;

use crate::error::CliError;

fn field_f64(v: &Value, key: &str, location: &str) -> Result<f64, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::parse(location, format!("{key} required")))?
        .as_f64()
        .ok_or_else(|| CliError::parse(format!("{location}.{key}"), "expected a number"))
}

fn kind<'a>(v: &'a Value, location: &str) -> Result<&'a str, CliError> {
    if !v.is_object() {
        return Err(CliError::parse(location, "generator spec must be an object"));
    }
    v.get("kind")
        .ok_or_else(|| CliError::parse(location, "kind required"))?
        .as_str()
        .ok_or_else(|| CliError::parse(format!("{location}.kind"), "expected a string"))
}

pub fn parse_generator(v: &Value, location: &str) -> Result<Generator, CliError> {
    let core = |e| CliError::validation(location, e);
    let mut g = match kind(v, location)? {
        "tv" | "total_variation" => Generator::total_variation(),
        "kl+" | "kl" | "kl_positive_part" => Generator::kl_positive_part(),
        "sqrt" | "bhattacharyya" => Generator::sqrt(),
        "power" | "hellinger" => Generator::power(field_f64(v, "alpha", location)?).map_err(core)?,
        "linear" => Generator::linear(field_f64(v, "a", location)?, field_f64(v, "b", location)?).map_err(core)?,
        other => return Err(CliError::parse(format!("{location}.kind"), format!("unknown generator kind '{other}'"))),
    };
    if let Some(adj) = v.get("adjoint") {
        match adj.as_bool() {
            Some(true) => g = g.adjoint(),
            Some(false) => {}
            None => return Err(CliError::parse(format!("{location}.adjoint"), "expected a boolean")),
        }
    }
    if v.get("scale").is_some() {
        g = g.scaled(field_f64(v, "scale", location)?).map_err(core)?;
    }
    Ok(g)
}

pub fn parse_generator_str(text: &str, location: &str) -> Result<Generator, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::parse(location, e.to_string()))?;
    parse_generator(&v, location)
}

/// Parses a multivariate generator for `arity` densities.
pub fn parse_multivariate(text: &str, arity: usize, location: &str) -> Result<MultivariateGenerator, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::parse(location, e.to_string()))?;
    let core = |e| CliError::validation(location, e);
    match kind(&v, location)? {
        "matusita" => MultivariateGenerator::matusita(arity).map_err(core),
        "toussaint" => {
            let weights = v
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::parse(location, "weights required"))?
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    w.as_f64().ok_or_else(|| CliError::parse(format!("{location}.weights[{i}]"), "expected a number"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            MultivariateGenerator::toussaint(weights).map_err(core)
        }
        "lifted" => {
            let inner = v.get("f").ok_or_else(|| CliError::parse(location, "f required"))?;
            Ok(MultivariateGenerator::lifted(parse_generator(inner, &format!("{location}.f"))?))
        }
        _ => Ok(MultivariateGenerator::lifted(parse_generator(&v, location)?)),
    }
}

pub fn parse_body(text: &str, location: &str) -> Result<EllipsoidBody, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::parse(location, e.to_string()))?;
    let axes = v
        .get("semi_axes")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::parse(location, "semi_axes required"))?
        .iter()
        .enumerate()
        .map(|(i, a)| {
            a.as_f64().ok_or_else(|| CliError::parse(format!("{location}.semi_axes[{i}]"), "expected a number"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    EllipsoidBody::new(axes).map_err(|e| CliError::validation(location, e))
}
