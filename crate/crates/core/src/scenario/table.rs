// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::Path;

use super::ScenarioError;

/// Time series with `t` first, optional oracle and |Δ| columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// (quantity, max |Δ|) over rows with a finite oracle value.
    pub max_deviation: Vec<(String, f64)>,
    pub warnings: Vec<String>,
    /// Rows whose oracle failed, as (t, message); their oracle cells are NaN.
    pub failures: Vec<(f64, String)>,
}

impl ResultTable {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes the table as UTF-8 CSV.
pub fn emit(table: &ResultTable, path: &Path) -> Result<(), ScenarioError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(table.to_csv().as_bytes())?;
    f.flush()?;
    Ok(())
}
