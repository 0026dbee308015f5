//! Matrix JSON:
//! `{"field": "Q" | "Qi" | "GF", "modulus": p, "rows": m, "cols": n, "entries": [[...]]}`
//! with `modulus` present only for `GF` and entries as canonical scalar texts.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

use super::matrix::Matrix;
use super::scalar::FieldDescriptor;

pub fn matrix_to_json(m: &Matrix) -> Value {
    let mut obj = Map::new();
    obj.insert("field".into(), json!(m.field().tag()));
    if let Some(p) = m.field().modulus() {
        obj.insert("modulus".into(), json!(p));
    }
    obj.insert("rows".into(), json!(m.rows()));
    obj.insert("cols".into(), json!(m.cols()));
    obj.insert("entries".into(), json!(m.to_text_rows()));
    Value::Object(obj)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field_from_json(obj: &Map<String, Value>) -> Result<FieldDescriptor> {
    let tag = obj
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing string \"field\""))?;
    let modulus = obj.get("modulus");
    match (tag, modulus) {
        ("Q", None) => Ok(FieldDescriptor::Rationals),
        ("Qi", None) => Ok(FieldDescriptor::GaussianRationals),
        ("GF", Some(p)) => {
            let p = p.as_u64().ok_or_else(|| bad("\"modulus\" must be a positive integer"))?;
            FieldDescriptor::prime(p)
        }
        ("GF", None) => Err(bad("GF matrices need a \"modulus\"")),
        ("Q" | "Qi", Some(_)) => Err(bad("\"modulus\" is only allowed for GF")),
        (other, _) => Err(bad(format!("unknown field {other:?}"))),
    }
}

fn dimension(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| bad(format!("missing non-negative integer {key:?}")))
}

pub fn matrix_from_json(value: &Value) -> Result<Matrix> {
    let obj = value.as_object().ok_or_else(|| bad("matrix must be a JSON object"))?;
    if let Some(key) = obj
        .keys()
        .find(|k| !matches!(k.as_str(), "field" | "modulus" | "rows" | "cols" | "entries"))
    {
        return Err(bad(format!("unknown key {key:?}")));
    }
    let field = field_from_json(obj)?;
    let rows = dimension(obj, "rows")?;
    let cols = dimension(obj, "cols")?;
    let entry_rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"entries\""))?;
    if entry_rows.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", entry_rows.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in entry_rows {
        let row = row.as_array().ok_or_else(|| bad("each row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} columns, found {}", row.len())));
        }
        for cell in row {
            let text = cell.as_str().ok_or_else(|| bad("entries must be strings"))?;
            entries.push(field.parse(text)?);
        }
    }
    Matrix::from_entries(field, rows, cols, entries)
}

pub fn parse_matrix_json(text: &str) -> Result<Matrix> {
    let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    matrix_from_json(&value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_and_writes_gaussian_matrix() {
        let text = r#"{"field":"Qi","rows":1,"cols":2,"entries":[["i","2/4+i"]]}"#;
        let m = parse_matrix_json(text).unwrap();
        assert_eq!(m.to_text_rows(), vec![vec!["i".to_string(), "1/2+i".to_string()]]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn prime_field_needs_prime_modulus() {
        let ok = r#"{"field":"GF","modulus":5,"rows":1,"cols":1,"entries":[["7"]]}"#;
        assert_eq!(parse_matrix_json(ok).unwrap().get(0, 0).to_string(), "2");
        let composite = r#"{"field":"GF","modulus":6,"rows":1,"cols":1,"entries":[["1"]]}"#;
        assert!(matches!(parse_matrix_json(composite), Err(Error::NotPrime(6))));
        let missing = r#"{"field":"GF","rows":1,"cols":1,"entries":[["1"]]}"#;
        assert!(parse_matrix_json(missing).is_err());
    }

    #[test]
    fn rejects_shape_disagreement() {
        let text = r#"{"field":"Q","rows":2,"cols":1,"entries":[["1"]]}"#;
        assert!(parse_matrix_json(text).is_err());
        let text = r#"{"field":"Q","rows":1,"cols":2,"entries":[["1"]]}"#;
        assert!(parse_matrix_json(text).is_err());
        let text = r#"{"field":"Q","rows":1,"cols":1,"entries":[[1]]}"#;
        assert!(parse_matrix_json(text).is_err());
        let text = r#"{"field":"Q","rows":1,"cols":1,"entries":[["1"]],"extra":0}"#;
        assert!(parse_matrix_json(text).is_err());
    }

    #[test]
    fn empty_shapes() {
        let text = r#"{"field":"Q","rows":2,"cols":0,"entries":[[],[]]}"#;
        let m = parse_matrix_json(text).unwrap();
        assert_eq!(m.shape(), (2, 0));
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }
}
