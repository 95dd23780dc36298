//! Field CSV and JSON report files.

use crate::error::CliError;
use alphaconvex::{Field, Grid};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

pub const SCHEMA: &str = "alphaconvex.v1";
pub const CSV_HEADER: &str = "x,y,value";

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

/// Row-major `x,y,value` lines with 17 significant digits.
pub fn field_csv(field: &Field) -> String {
    let mut out = String::with_capacity(64 * field.values().len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (z, v) in field.grid().points().zip(field.values()) {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", z[0], z[1], v);
    }
    out
}

pub fn write_field_csv(path: &Path, field: &Field) -> Result<(), CliError> {
    std::fs::write(path, field_csv(field)).map_err(|e| io_error(path, e))
}

/// Parses a field CSV and matches its rows to `grid` node by node.
pub fn parse_field_csv(text: &str, grid: &Arc<Grid>) -> Result<Field, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(CliError::Field(format!(
                "expected header `{CSV_HEADER}`, found {other:?}"
            )))
        }
    }
    let mut values = Vec::with_capacity(grid.len());
    for (row, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(CliError::Field(format!(
                "row {}: expected 3 columns",
                row + 1
            )));
        }
        let mut nums = [0.0; 3];
        for (slot, col) in nums.iter_mut().zip(&cols) {
            *slot = col.trim().parse().map_err(|e| {
                CliError::Field(format!("row {}: cannot parse `{col}`: {e}", row + 1))
            })?;
        }
        if row >= grid.len() {
            return Err(CliError::Field(format!(
                "field has more rows than the {} grid nodes",
                grid.len()
            )));
        }
        let z = grid.point(row);
        let tol = 1e-9 * grid.h();
        if (nums[0] - z[0]).abs() > tol || (nums[1] - z[1]).abs() > tol {
            return Err(CliError::Field(format!(
                "row {} at ({}, {}) does not match grid node {:?}",
                row + 1,
                nums[0],
                nums[1],
                z
            )));
        }
        values.push(nums[2]);
    }
    if values.len() != grid.len() {
        return Err(CliError::Field(format!(
            "field has {} rows, grid has {} nodes",
            values.len(),
            grid.len()
        )));
    }
    Field::new(grid.clone(), values).map_err(|e| CliError::Field(e.to_string()))
}

pub fn read_field_csv(path: &Path, grid: &Arc<Grid>) -> Result<Field, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Field(format!("cannot read {}: {e}", path.display())))?;
    parse_field_csv(&text, grid)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Config(format!("cannot serialise report: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}
