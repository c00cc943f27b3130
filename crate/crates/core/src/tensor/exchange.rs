//! `pptfarm-matrix/1` JSON exchange format.
//!
//! ```json
//! {"format":"pptfarm-matrix/1","dims":[2,2],"roles":["A1","B1"],"order":4,"entries":[...]}
//! ```
//!
//! Entries are row-major and written in shortest round-trip decimal form, so
//! a write/read cycle reproduces every `f64` bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::matrix::SymMatrix;
use crate::tensor::space::{FactorRole, FactorSpace};

pub const MATRIX_FORMAT: &str = "pptfarm-matrix/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    format: String,
    dims: Vec<usize>,
    roles: Vec<String>,
    order: usize,
    entries: Vec<f64>,
}

/// Shortest decimal that parses back to the same `f64`, formatted as in the
/// JSON outputs (`1.0`, `2.5e-17`).
pub fn format_float(x: f64) -> String {
    match serde_json::Number::from_f64(x) {
        Some(num) => num.to_string(),
        None => format!("{x:?}"),
    }
}

pub fn matrix_to_json(m: &SymMatrix) -> Result<String> {
    let file = MatrixFile {
        format: MATRIX_FORMAT.to_string(),
        dims: m.space().dims().to_vec(),
        roles: m.space().roles().iter().map(ToString::to_string).collect(),
        order: m.order(),
        entries: m.entries().to_vec(),
    };
    let mut s = serde_json::to_string(&file)?;
    s.push('\n');
    Ok(s)
}

pub fn matrix_from_json(text: &str) -> Result<SymMatrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    if file.format != MATRIX_FORMAT {
        return Err(Error::Format(format!(
            "expected format {MATRIX_FORMAT:?}, found {:?}",
            file.format
        )));
    }
    let roles = file
        .roles
        .iter()
        .map(|r| r.parse::<FactorRole>())
        .collect::<Result<Vec<_>>>()?;
    let space = FactorSpace::new(file.dims, roles)?;
    if space.total_dim() != file.order {
        return Err(Error::Format(format!(
            "order {} disagrees with dims product {}",
            file.order,
            space.total_dim()
        )));
    }
    SymMatrix::from_row_major(space, file.entries)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &SymMatrix) -> Result<()> {
    fs::write(path, matrix_to_json(m)?)?;
    Ok(())
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<SymMatrix> {
    matrix_from_json(&fs::read_to_string(path)?)
}
