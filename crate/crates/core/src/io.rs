//! Plot-ready CSV and JSON helpers shared by the CLI and the verification
//! suite. Doubles are written with 17 significant digits so every value
//! round-trips exactly.

use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        // keep -0.0 and 0.0 byte-identical
        return "0.0000000000000000e0".to_string();
    }
    format!("{v:.16e}")
}

/// In-memory CSV table with a header row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", fmt_f64(*v));
            }
            out.push('\n');
        }
        out
    }

    /// Parses a table written by [`CsvTable::to_csv_string`] (or any numeric
    /// CSV with a header).
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<String> = lines
            .next()
            .ok_or("empty csv")?
            .split(',')
            .map(|s| s.trim().to_string())
            .collect();
        let mut rows = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("line {}: {e}", lineno + 2))?;
            if row.len() != header.len() {
                return Err(format!(
                    "line {}: expected {} columns, found {}",
                    lineno + 2,
                    header.len(),
                    row.len()
                ));
            }
            rows.push(row);
        }
        Ok(Self { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_round_trips() {
        for v in [1.0, -0.1, std::f64::consts::PI, 1e-300, 6.02e23] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(-0.0), fmt_f64(0.0));
    }

    #[test]
    fn csv_parse_back() {
        let mut t = CsvTable::new(["x", "value"]);
        t.push(vec![0.0, 1.5]);
        t.push(vec![0.25, -2.0 / 3.0]);
        let back = CsvTable::parse(&t.to_csv_string()).unwrap();
        assert_eq!(back, t);
        assert!(CsvTable::parse("x,value\n1,2,3\n").is_err());
    }
}
