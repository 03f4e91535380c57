//! JSON document describing a Herglotz generator.
//!
//! Float backend:
//!
//! ```json
//! {"atoms": [{"weight": 0.5, "angle_radians": 0.0}, {"weight": 0.5, "angle_radians": 3.14159}]}
//! ```
//!
//! Rational backend (point `x = ((1 - t^2) + 2 t i)/(1 + t^2)`, `"inf"` for
//! `x = -1`):
//!
//! ```json
//! {"atoms": [{"weight": "1/2", "t": "0"}, {"weight": "1/2", "t": "inf"}]}
//! ```
//!
//! The split-integer form `{"weight_num", "weight_den", "t_num", "t_den"}`
//! is also accepted on input. Pythagorean atoms are accepted by both
//! backends; angle atoms only by the float backend.

use num_complex::Complex;
use serde_json::{json, Map, Value};

use crate::caratheodory::{pythagorean_parameter, pythagorean_point, Atom, HerglotzAtoms};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn scalar_field<S: Scalar>(obj: &Map<String, Value>, key: &str, idx: usize) -> Result<Option<S>> {
    match obj.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => S::parse(s)
            .map(Some)
            .map_err(|e| parse_err(format!("atoms[{idx}].{key}: {e}"))),
        Some(Value::Number(n)) => S::parse(&n.to_string())
            .map(Some)
            .map_err(|e| parse_err(format!("atoms[{idx}].{key}: {e}"))),
        Some(other) => Err(parse_err(format!(
            "atoms[{idx}].{key}: expected number or string, got {other}"
        ))),
    }
}

fn int_field(obj: &Map<String, Value>, key: &str, idx: usize) -> Result<i64> {
    obj.get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| parse_err(format!("atoms[{idx}].{key}: expected an integer")))
}

fn is_infinite_t(v: Option<&Value>) -> bool {
    matches!(v, Some(Value::String(s)) if matches!(s.trim(), "inf" | "+inf" | "-inf" | "infinity"))
}

fn decode_atom<S: Scalar>(value: &Value, idx: usize) -> Result<Atom<S>> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err(format!("atoms[{idx}]: expected an object")))?;
    if obj.contains_key("weight_num") {
        let (wn, wd) = (int_field(obj, "weight_num", idx)?, int_field(obj, "weight_den", idx)?);
        let (tn, td) = (int_field(obj, "t_num", idx)?, int_field(obj, "t_den", idx)?);
        if wd == 0 {
            return Err(parse_err(format!("atoms[{idx}]: zero weight denominator")));
        }
        let point = if td == 0 {
            pythagorean_point::<S>(None)
        } else {
            pythagorean_point(Some(&S::ratio(tn, td)))
        };
        return Ok(Atom { weight: S::ratio(wn, wd), point });
    }
    let weight = scalar_field::<S>(obj, "weight", idx)?
        .ok_or_else(|| parse_err(format!("atoms[{idx}]: missing weight")))?;
    if obj.contains_key("t") {
        let point = if is_infinite_t(obj.get("t")) {
            pythagorean_point::<S>(None)
        } else {
            let t = scalar_field::<S>(obj, "t", idx)?.expect("key present");
            pythagorean_point(Some(&t))
        };
        return Ok(Atom { weight, point });
    }
    if let Some(angle) = obj.get("angle_radians") {
        if S::EXACT {
            return Err(parse_err(format!(
                "atoms[{idx}]: angle_radians needs the float backend; use \"t\" for exact points"
            )));
        }
        let theta = angle
            .as_f64()
            .ok_or_else(|| parse_err(format!("atoms[{idx}].angle_radians: expected a number")))?;
        let point = Complex::new(S::approx_f64(theta.cos(), 0), S::approx_f64(theta.sin(), 0));
        return Ok(Atom { weight, point });
    }
    Err(parse_err(format!("atoms[{idx}]: need \"angle_radians\" or \"t\"")))
}

/// Parses and validates a generator document. JSON syntax errors carry line
/// and column; invalid atoms carry their index.
pub fn parse_atoms<S: Scalar>(text: &str) -> Result<HerglotzAtoms<S>> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let atoms = value
        .get("atoms")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("document must have an \"atoms\" array"))?;
    let atoms = atoms
        .iter()
        .enumerate()
        .map(|(i, v)| decode_atom(v, i))
        .collect::<Result<Vec<_>>>()?;
    HerglotzAtoms::new(atoms).map_err(|e| match e {
        Error::Domain(m) => parse_err(m),
        other => other,
    })
}

/// Serializes in the backend's native form.
pub fn atoms_to_value<S: Scalar>(p: &HerglotzAtoms<S>) -> Value {
    let atoms: Vec<Value> = p
        .atoms()
        .iter()
        .map(|a| {
            if S::EXACT {
                let t = pythagorean_parameter(&a.point)
                    .map(|t| t.render())
                    .unwrap_or_else(|| "inf".to_string());
                json!({"weight": a.weight.render(), "t": t})
            } else {
                let theta = a.point.im.to_f64().atan2(a.point.re.to_f64());
                json!({"weight": a.weight.to_f64(), "angle_radians": theta})
            }
        })
        .collect();
    json!({ "atoms": atoms })
}

pub fn atoms_to_string<S: Scalar>(p: &HerglotzAtoms<S>) -> String {
    atoms_to_value(p).to_string()
}
