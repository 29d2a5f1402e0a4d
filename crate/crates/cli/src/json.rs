//! Polytope files and result serialization.
//!
//! A polytope file is `{"vertices": [[...], ...]}` with entries given as JSON
//! integers or strings `"p/q"`. An empty vertex list needs an explicit
//! `"dim"`.

use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use wehrhart::analysis::SymMatrix;
use wehrhart::{HStarResult, Poly, Polytope, Rat};

use crate::CliError;

fn invalid(message: impl Into<String>) -> CliError {
    CliError::Polytope(message.into())
}

pub fn parse_rational(s: &str) -> Result<Rat, CliError> {
    let s = s.trim();
    let bad = || CliError::Rational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == 0.into() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn entry(v: &Value, row: usize, col: usize) -> Result<Rat, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rat::from_integer(x.into()))
            .ok_or_else(|| invalid(format!("vertex {row}, entry {col}: {n} is not an integer; use a \"p/q\" string"))),
        Value::String(s) => parse_rational(s),
        other => Err(invalid(format!("vertex {row}, entry {col}: expected a number or string, got {other}"))),
    }
}

pub fn parse_polytope(doc: &str) -> Result<Polytope, CliError> {
    let root: Value = serde_json::from_str(doc)?;
    let rows = root
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("expected an object with a \"vertices\" array"))?;
    let vertices = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| invalid(format!("vertex {i} is not an array")))?
                .iter()
                .enumerate()
                .map(|(j, v)| entry(v, i, j))
                .collect::<Result<Vec<Rat>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dim = match root.get("dim") {
        Some(v) => v
            .as_u64()
            .and_then(|d| d.to_usize())
            .ok_or_else(|| invalid("\"dim\" must be a nonnegative integer"))?,
        None => vertices
            .first()
            .map(Vec::len)
            .ok_or_else(|| invalid("an empty vertex list needs \"dim\""))?,
    };
    Ok(Polytope::new(dim, vertices)?)
}

/// Integers as JSON numbers when they fit, everything else as strings.
pub fn rational_value(r: &Rat) -> Value {
    if r.denom().is_one() {
        if let Some(x) = r.numer().to_i64() {
            return json!(x);
        }
    }
    json!(r.to_string())
}

pub fn polytope_value(p: &Polytope) -> Value {
    let rows: Vec<Vec<Value>> = p.vertices().iter().map(|v| v.iter().map(rational_value).collect()).collect();
    if rows.is_empty() {
        json!({ "dim": p.ambient_dim(), "vertices": rows })
    } else {
        json!({ "vertices": rows })
    }
}

pub fn serialize_polytope(p: &Polytope) -> String {
    polytope_value(p).to_string()
}

pub fn coeff_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(Rat::to_string).collect()
}

pub fn hstar_value(r: &HStarResult) -> Value {
    json!({
        "numerator": coeff_strings(&r.numerator),
        "period": r.period,
        "exponent": r.exponent,
    })
}

/// Inverse of [`hstar_value`]: `(numerator, period, exponent)`.
pub fn parse_hstar_value(v: &Value) -> Result<(Poly, usize, usize), CliError> {
    let bad = || CliError::Result(v.to_string());
    let coeffs = v["numerator"]
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|c| parse_rational(c.as_str().ok_or_else(bad)?))
        .collect::<Result<Vec<_>, _>>()?;
    let period = v["period"].as_u64().ok_or_else(bad)? as usize;
    let exponent = v["exponent"].as_u64().ok_or_else(bad)? as usize;
    Ok((Poly::new(coeffs), period, exponent))
}

pub fn denominator_text(period: usize, exponent: usize) -> String {
    let base = if period == 1 { "1 - t".to_string() } else { format!("1 - t^{period}") };
    match exponent {
        0 => "1".into(),
        1 => format!("({base})"),
        b => format!("({base})^{b}"),
    }
}

pub fn hstar_text(r: &HStarResult) -> String {
    format!("h*(t) = {}\ndenominator = {}", r.numerator, denominator_text(r.period, r.exponent))
}

pub fn matrix_value(m: &SymMatrix) -> Value {
    json!(m.rows().iter().map(|row| row.iter().map(Rat::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn matrix_text(m: &SymMatrix) -> String {
    m.rows()
        .iter()
        .map(|row| format!("[{}]", row.iter().map(Rat::to_string).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}
