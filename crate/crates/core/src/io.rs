//! JSON encodings of fields, elements, cubics, points and matrices.
//!
//! Elements are lists of coefficients, low degree first (`[0,1]` is `w` in
//! `F_4`); plain integers are also accepted on input. A cubic looks like
//! `{"field":"2^2","coeffs":{"002":[1],"011":[0,1]}}` with only the nonzero
//! coefficients listed; a non-default modulus goes in `"modulus"`.

use serde_json::{json, Map, Value};

use crate::detrep::{EquivalenceWitness, LinearMatrixRep};
use crate::gf::{Elem, Field, GfError};
use crate::linalg::Mat3;
use crate::oracle::OrbitCensus;
use crate::parse;
use crate::plane::{ProjPoint, TernaryCubic, CUBIC_LABELS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Format(msg.into()))
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

pub fn field_name(f: &Field) -> String {
    format!("{}^{}", f.p(), f.m())
}

fn is_default_modulus(f: &Field) -> bool {
    Field::new(f.p() as u64, f.m(), None).map(|d| d.modulus() == f.modulus()).unwrap_or(false)
}

fn field_header(f: &Field) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("field".into(), json!(field_name(f)));
    if !is_default_modulus(f) {
        m.insert("modulus".into(), json!(f.modulus()));
    }
    m
}

/// Reads `"field"` (and `"modulus"`, if present) from a JSON object.
pub fn field_from_json(v: &Value) -> Result<Field, IoError> {
    let Some(name) = v.get("field").and_then(Value::as_str) else {
        return bad("missing \"field\"");
    };
    let (p, m) = parse::field_spec(name).map_err(|e| IoError::Format(e.0))?;
    let modulus: Option<Vec<u32>> = match v.get("modulus") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(|x| x.as_u64().map(|n| n as u32).ok_or_else(|| IoError::Format("bad modulus".into())))
                .collect::<Result<_, _>>()?,
        ),
        Some(_) => return bad("\"modulus\" must be a list of integers"),
    };
    Ok(Field::new(p, m, modulus.as_deref())?)
}

pub fn element_to_json(f: &Field, a: Elem) -> Value {
    json!(f.coeffs(a))
}

pub fn element_from_json(f: &Field, v: &Value) -> Result<Elem, IoError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(f.from_int(i)),
            None => bad(format!("bad element {v}")),
        },
        Value::Array(a) => {
            let mut coeffs = Vec::with_capacity(a.len());
            for c in a {
                let Some(c) = c.as_i64() else { return bad(format!("bad element {v}")) };
                coeffs.push(c.rem_euclid(f.p() as i64) as u32);
            }
            Ok(f.from_coeffs(&coeffs)?)
        }
        Value::String(s) => parse::element(f, s).map_err(|e| IoError::Format(e.0)),
        _ => bad(format!("bad element {v}")),
    }
}

pub fn cubic_to_json(c: &TernaryCubic) -> Value {
    let f = c.field();
    let mut coeffs = Map::new();
    for (label, &a) in CUBIC_LABELS.iter().zip(c.coeffs()) {
        if !a.is_zero() {
            coeffs.insert(label.to_string(), element_to_json(f, a));
        }
    }
    let mut m = field_header(f);
    m.insert("coeffs".into(), Value::Object(coeffs));
    Value::Object(m)
}

/// Accepts either `"coeffs"` or an `"equation"` string such as `"X^2Z + Y^3"`.
pub fn cubic_from_json(v: &Value) -> Result<TernaryCubic, IoError> {
    let f = field_from_json(v)?;
    if let Some(eq) = v.get("equation").and_then(Value::as_str) {
        return parse::cubic(&f, eq).map_err(|e| IoError::Format(e.0));
    }
    let Some(obj) = v.get("coeffs").and_then(Value::as_object) else {
        return bad("missing \"coeffs\"");
    };
    let mut coeffs = [Elem::ZERO; 10];
    for (label, val) in obj {
        let Some(i) = CUBIC_LABELS.iter().position(|l| l == label) else {
            return bad(format!("unknown coefficient label {label:?}"));
        };
        coeffs[i] = element_from_json(&f, val)?;
    }
    TernaryCubic::new(&f, coeffs).map_err(|e| IoError::Format(e.to_string()))
}

pub fn point_to_json(f: &Field, p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(|&c| element_to_json(f, c)).collect())
}

/// A list of three elements, or a string such as `"[1:0:0]"`.
pub fn point_from_json(f: &Field, v: &Value) -> Result<ProjPoint, IoError> {
    if let Some(s) = v.as_str() {
        return parse::point(f, s).map_err(|e| IoError::Format(e.0));
    }
    let Some(a) = v.as_array().filter(|a| a.len() == 3) else {
        return bad("a point is a list of three elements");
    };
    let c = [element_from_json(f, &a[0])?, element_from_json(f, &a[1])?, element_from_json(f, &a[2])?];
    ProjPoint::new(f, c).map_err(|e| IoError::Format(e.to_string()))
}

pub fn matrix_to_json(f: &Field, m: &Mat3) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|&e| element_to_json(f, e)).collect())).collect())
}

pub fn matrix_from_json(f: &Field, v: &Value) -> Result<Mat3, IoError> {
    let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(|| IoError::Format("expected 3 rows".into()))?;
    let mut out = [[Elem::ZERO; 3]; 3];
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| IoError::Format("expected 3 columns".into()))?;
        for (j, cell) in cells.iter().enumerate() {
            out[i][j] = element_from_json(f, cell)?;
        }
    }
    Ok(out)
}

pub fn rep_to_json(rep: &LinearMatrixRep) -> Value {
    let f = rep.field();
    let mut m = field_header(f);
    for (k, name) in ["m0", "m1", "m2"].iter().enumerate() {
        m.insert(name.to_string(), matrix_to_json(f, &rep.coefficient(k)));
    }
    Value::Object(m)
}

/// Accepts `"m0"`, `"m1"`, `"m2"` or a `"matrix"` string of linear forms.
pub fn rep_from_json(v: &Value) -> Result<LinearMatrixRep, IoError> {
    let f = field_from_json(v)?;
    if let Some(s) = v.get("matrix").and_then(Value::as_str) {
        return parse::linear_matrix(&f, s).map_err(|e| IoError::Format(e.0));
    }
    let get = |k: &str| v.get(k).ok_or_else(|| IoError::Format(format!("missing {k:?}")));
    let ms = [matrix_from_json(&f, get("m0")?)?, matrix_from_json(&f, get("m1")?)?, matrix_from_json(&f, get("m2")?)?];
    LinearMatrixRep::new(&f, ms[0], ms[1], ms[2]).map_err(|e| IoError::Format(e.to_string()))
}

pub fn witness_to_json(f: &Field, w: &EquivalenceWitness) -> Value {
    json!({ "a": matrix_to_json(f, &w.a), "b": matrix_to_json(f, &w.b) })
}

pub fn witness_from_json(f: &Field, v: &Value) -> Result<EquivalenceWitness, IoError> {
    let get = |k: &str| v.get(k).ok_or_else(|| IoError::Format(format!("missing {k:?}")));
    Ok(EquivalenceWitness { a: matrix_from_json(f, get("a")?)?, b: matrix_from_json(f, get("b")?)? })
}

pub fn census_to_json(c: &OrbitCensus) -> Value {
    let orbits: Vec<Value> = c
        .orbits
        .iter()
        .map(|o| {
            json!({
                "representative": cubic_to_json(&o.representative),
                "equation": crate::render::cubic(&o.representative),
                "orbit_size": o.orbit_size,
                "point_count": o.point_count,
            })
        })
        .collect();
    let histogram: Map<String, Value> = c.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({ "q": c.q, "orbits": orbits, "histogram": histogram })
}
