//! Matrix literals in JSON.
//!
//! Exact matrices are arrays of rows whose entries are strings `"p/q"` or
//! `"p"` (JSON integers are accepted too). Float matrices additionally accept
//! JSON numbers and are written with 17 significant digits.

use jm_core::rational::{format_rational, parse_rational, to_f64};
use jm_core::uniformization::FloatMatrix;
use jm_core::{Rational, RationalMatrix};
use serde_json::value::RawValue;
use serde_json::Value;

use crate::CliError;

fn rows_of(value: &Value) -> Result<&Vec<Value>, CliError> {
    value
        .as_array()
        .ok_or_else(|| CliError::Parse(String::from("matrix must be a JSON array of rows")))
}

fn exact_entry(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| CliError::Parse(e.to_string())),
        Value::Number(x) if x.is_i64() => parse_rational(&x.to_string()).map_err(|e| CliError::Parse(e.to_string())),
        other => Err(CliError::Parse(format!("entry {other} is not an exact rational"))),
    }
}

fn float_entry(v: &Value) -> Result<f64, CliError> {
    match v {
        Value::Number(x) => x
            .as_f64()
            .ok_or_else(|| CliError::Parse(format!("entry {x} is not representable"))),
        _ => exact_entry(v).map(|r| to_f64(&r)),
    }
}

fn grid<T>(value: &Value, entry: impl Fn(&Value) -> Result<T, CliError>) -> Result<Vec<Vec<T>>, CliError> {
    rows_of(value)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| CliError::Parse(String::from("each row must be a JSON array")))?
                .iter()
                .map(&entry)
                .collect()
        })
        .collect()
}

pub fn rational_matrix_from_json(value: &Value) -> Result<RationalMatrix, CliError> {
    RationalMatrix::from_rows(grid(value, exact_entry)?).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn float_matrix_from_json(value: &Value) -> Result<FloatMatrix, CliError> {
    FloatMatrix::from_rows(grid(value, float_entry)?).map_err(|e| CliError::Parse(e.to_string()))
}

/// A JSON array of exact matrices.
pub fn basis_from_json(value: &Value) -> Result<Vec<RationalMatrix>, CliError> {
    rows_of(value)?.iter().map(rational_matrix_from_json).collect()
}

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))
}

pub fn rational_matrix_to_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.rows().map(|r| r.iter().map(format_rational).collect()).collect()
}

pub fn rational_matrix_from_strings(rows: &[Vec<String>]) -> Result<RationalMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Parse(e.to_string()))?;
    RationalMatrix::from_rows(rows).map_err(|e| CliError::Parse(e.to_string()))
}

/// `x` as a JSON number with 17 significant digits.
pub fn float_17(x: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{x:.16e}")).expect("finite floats format as JSON numbers")
}

pub fn float_matrix_to_json(m: &FloatMatrix) -> Vec<Vec<Box<RawValue>>> {
    m.rows().into_iter().map(|r| r.into_iter().map(float_17).collect()).collect()
}
