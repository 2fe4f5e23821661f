//! Report rendering. JSON keeps insertion order; floats are written in
//! shortest round-trip form, which is locale-independent.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Result of one subcommand.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: Table,
    /// `false` when an asserted identity is out of tolerance.
    pub passed: bool,
}

/// Shortest text that parses back to `x`; `NaN` and infinities as in JSON (`null`).
pub fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("f64 serialises")
}

pub fn cplx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.header)?;
            for r in &report.table.rows {
                w.write_record(r)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::f64::consts::PI] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.0), "1.0");
        assert_eq!(num(f64::NAN), "null");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["0,1,2".into(), num(0.5)]);
        let r = Report {
            json: Value::Null,
            table: t,
            passed: true,
        };
        assert_eq!(render(&r, Format::Csv).unwrap(), "a,b\n\"0,1,2\",0.5\n");
    }
}
