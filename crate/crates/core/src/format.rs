//! JSON forms of polynomials, intervals, field elements and systems.
//!
//! Integers and rationals travel as decimal strings (`"-7"`, `"3/4"`) so that
//! no precision is lost in transit.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebraic::{AlgebraicReal, FieldElement, IntPolynomial, NumberField};
use crate::error::{Error, Result};
use crate::numeration::{NumerationSystem, Preset};
use crate::oracle::parse_rational;

fn parse_err(what: &str, v: impl std::fmt::Display) -> Error {
    Error::Parse(format!("bad {what}: {v}"))
}

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_str(s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| parse_err("rational", s))
}

pub fn poly_to_json(p: &IntPolynomial) -> Value {
    json!(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

pub fn poly_from_json(v: &Value) -> Result<IntPolynomial> {
    let items = v.as_array().ok_or_else(|| parse_err("polynomial", v))?;
    let coeffs = items
        .iter()
        .map(|c| match c {
            Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| parse_err("coefficient", s)),
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| parse_err("coefficient", n)),
            other => Err(parse_err("coefficient", other)),
        })
        .collect::<Result<Vec<_>>>()?;
    IntPolynomial::new(coeffs)
}

pub fn interval_to_json(lo: &BigRational, hi: &BigRational) -> Value {
    json!([rational_to_string(lo), rational_to_string(hi)])
}

pub fn interval_from_json(v: &Value) -> Result<(BigRational, BigRational)> {
    let pair: [String; 2] = serde_json::from_value(v.clone()).map_err(|_| parse_err("interval", v))?;
    Ok((rational_from_str(&pair[0])?, rational_from_str(&pair[1])?))
}

pub fn element_to_json(e: &FieldElement) -> Value {
    json!({ "coords": e.coords().iter().map(rational_to_string).collect::<Vec<_>>() })
}

pub fn element_from_json(field: &NumberField, v: &Value) -> Result<FieldElement> {
    #[derive(Deserialize)]
    struct Coords {
        coords: Vec<String>,
    }
    let c: Coords = serde_json::from_value(v.clone()).map_err(|_| parse_err("field element", v))?;
    let coords = c.coords.iter().map(|s| rational_from_str(s)).collect::<Result<Vec<_>>>()?;
    field.element(coords)
}

pub fn base_to_json(beta: &AlgebraicReal) -> Value {
    let (lo, hi) = beta.interval();
    json!({ "poly": poly_to_json(beta.minpoly()), "interval": interval_to_json(lo, hi) })
}

pub fn base_from_json(v: &Value) -> Result<AlgebraicReal> {
    let poly = poly_from_json(v.get("poly").ok_or_else(|| parse_err("base", v))?)?;
    let (lo, hi) = interval_from_json(v.get("interval").ok_or_else(|| parse_err("base", v))?)?;
    AlgebraicReal::new_base(poly, lo, hi)
}

#[derive(Serialize)]
struct SystemJson {
    beta: Value,
    l: Value,
}

pub fn system_to_json(s: &NumerationSystem) -> Value {
    serde_json::to_value(SystemJson { beta: base_to_json(s.field().generator()), l: element_to_json(s.l()) })
        .expect("plain data")
}

/// Accepts `"l"` either as `{"coords": [...]}` or as a preset name.
pub fn system_from_json(v: &Value) -> Result<NumerationSystem> {
    let beta = base_from_json(v.get("beta").ok_or_else(|| parse_err("system", v))?)?;
    let field = NumberField::new(beta)?;
    match v.get("l") {
        Some(Value::String(name)) => NumerationSystem::preset(&field, name.parse::<Preset>()?),
        Some(l) => NumerationSystem::new(element_from_json(&field, l)?),
        None => Err(parse_err("system", v)),
    }
}
