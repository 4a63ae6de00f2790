//! CSV emission.

use std::path::Path;

use crate::error::CliError;

/// Shortest text that parses back to exactly `x`; scientific notation
/// outside `[1e-4, 1e9)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e9).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Header plus rows, written in the given field order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let to_io = |e: csv::Error| CliError::io(path, std::io::Error::other(e));
        let mut w = csv::Writer::from_path(path).map_err(to_io)?;
        w.write_record(&self.header).map_err(to_io)?;
        for row in &self.rows {
            w.write_record(row).map_err(to_io)?;
        }
        w.flush().map_err(|e| CliError::io(path, e))
    }
}
