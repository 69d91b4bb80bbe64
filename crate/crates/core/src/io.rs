//! Matrix and system file formats.
//!
//! Text matrices are a `rows cols` header followed by whitespace-separated
//! row-major entries; `#` starts a comment. A JSON matrix is an array of
//! rows. A system file holds `A` then `B` as two text blocks, or the JSON
//! object `{"a": [[...]], "b": [...]}`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{DenseMatrix, DenseVector};
use crate::placement::StateSpace;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Read(String),
}

fn tokens(text: &str) -> Vec<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .collect()
}

fn parse_dim(tok: Option<&&str>, what: &str) -> Result<usize, IoError> {
    let t = tok.ok_or_else(|| IoError::Malformed(format!("missing {what} in header")))?;
    let d: usize = t
        .parse()
        .map_err(|_| IoError::Malformed(format!("{what} '{t}' is not a non-negative integer")))?;
    if d == 0 {
        return Err(IoError::Malformed(format!("{what} must be at least 1")));
    }
    Ok(d)
}

/// Reads consecutive `rows cols` blocks of tokens.
fn blocks<'a>(toks: &[&'a str]) -> Result<Vec<(usize, usize, Vec<&'a str>)>, IoError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let r = parse_dim(toks.get(i), "row count")?;
        let c = parse_dim(toks.get(i + 1), "column count")?;
        let body = toks
            .get(i + 2..i + 2 + r * c)
            .ok_or_else(|| IoError::Malformed(format!("expected {} entries for a {r}x{c} matrix", r * c)))?;
        out.push((r, c, body.to_vec()));
        i += 2 + r * c;
    }
    Ok(out)
}

fn to_f64(tok: &str) -> Result<f64, IoError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| IoError::Malformed(format!("'{tok}' is not a number")))?;
    if !v.is_finite() {
        return Err(IoError::Malformed(format!("non-finite entry '{tok}'")));
    }
    Ok(v)
}

fn block_matrix(r: usize, c: usize, body: &[&str]) -> Result<DenseMatrix<f64>, IoError> {
    let data = body.iter().map(|t| to_f64(t)).collect::<Result<Vec<_>, _>>()?;
    DenseMatrix::new(r, c, data).map_err(|e| IoError::Malformed(e.to_string()))
}

fn json_rows(v: &serde_json::Value) -> Result<Vec<Vec<f64>>, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| IoError::Malformed("expected an array of rows".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| IoError::Malformed("expected each row to be an array".into()))?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| IoError::Malformed(format!("'{x}' is not a number"))))
                .collect()
        })
        .collect()
}

fn rows_matrix(rows: Vec<Vec<f64>>) -> Result<DenseMatrix<f64>, IoError> {
    if rows.is_empty() {
        return Err(IoError::Malformed("empty matrix".into()));
    }
    DenseMatrix::from_rows(&rows).map_err(|e| IoError::Malformed(e.to_string()))
}

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('[') | Some('{'))
}

/// Parses a text or JSON matrix.
pub fn parse_matrix(text: &str) -> Result<DenseMatrix<f64>, IoError> {
    if is_json(text) {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        return rows_matrix(json_rows(&v)?);
    }
    let toks = tokens(text);
    match blocks(&toks)?.as_slice() {
        [(r, c, body)] => block_matrix(*r, *c, body),
        [] => Err(IoError::Malformed("empty input".into())),
        _ => Err(IoError::Malformed("expected a single matrix".into())),
    }
}

/// Text form; entries use the shortest representation that reads back exactly.
pub fn write_matrix(m: &DenseMatrix<f64>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:?}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_matrix_json(m: &DenseMatrix<f64>) -> String {
    serde_json::to_string(&m.to_rows()).expect("finite entries serialise")
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonSystem {
    a: serde_json::Value,
    b: serde_json::Value,
}

fn input_vector(m: &DenseMatrix<f64>) -> Result<DenseVector<f64>, IoError> {
    if m.cols() == 1 {
        Ok(m.column(0))
    } else if m.rows() == 1 {
        Ok(m.row_vector(0))
    } else {
        Err(IoError::Malformed(format!(
            "B must be a single column or row, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

/// Parses a single-input system.
pub fn parse_system(text: &str) -> Result<StateSpace<f64>, IoError> {
    let (a, b) = if is_json(text) {
        let js: JsonSystem = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        let a = rows_matrix(json_rows(&js.a)?)?;
        let b = match &js.b {
            serde_json::Value::Array(items) if items.iter().all(|x| x.is_number()) => DenseVector::new(
                items
                    .iter()
                    .map(|x| x.as_f64().ok_or_else(|| IoError::Malformed(format!("'{x}' is not a number"))))
                    .collect::<Result<Vec<_>, _>>()?,
            )
            .map_err(|e| IoError::Malformed(e.to_string()))?,
            other => input_vector(&rows_matrix(json_rows(other)?)?)?,
        };
        (a, b)
    } else {
        let toks = tokens(text);
        match blocks(&toks)?.as_slice() {
            [(ra, ca, ba), (rb, cb, bb)] => (block_matrix(*ra, *ca, ba)?, input_vector(&block_matrix(*rb, *cb, bb)?)?),
            other => {
                return Err(IoError::Malformed(format!(
                    "a system file holds two matrices (A then B), found {}",
                    other.len()
                )))
            }
        }
    };
    StateSpace::new(a, b).map_err(|e| IoError::Malformed(e.to_string()))
}

/// Text form of a system: `A` block then `B` as an `n x 1` block.
pub fn write_system(sys: &StateSpace<f64>) -> String {
    let b = DenseMatrix::column_matrix(sys.b());
    format!("{}{}", write_matrix(sys.a()), write_matrix(&b))
}

pub fn write_system_json(sys: &StateSpace<f64>) -> String {
    serde_json::json!({ "a": sys.a().to_rows(), "b": sys.b().as_slice() }).to_string()
}

/// Integer entries of a system file, for exact placement.
pub fn parse_integer_system(text: &str) -> Result<(Vec<Vec<BigInt>>, Vec<BigInt>), IoError> {
    let sys = parse_system(text)?;
    let to_int = |v: f64| -> Result<BigInt, IoError> {
        if v.fract() != 0.0 || v.abs() >= 9.007_199_254_740_992e15 {
            return Err(IoError::Malformed(format!("exact placement needs integer entries, found {v}")));
        }
        Ok(BigInt::from(v as i64))
    };
    let a = sys
        .a()
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(to_int).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let b = sys.b().iter().map(|&v| to_int(v)).collect::<Result<Vec<_>, _>>()?;
    Ok((a, b))
}

/// Reads a file into a string.
pub fn read_file(path: &std::path::Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read(format!("{}: {e}", path.display())))
}
