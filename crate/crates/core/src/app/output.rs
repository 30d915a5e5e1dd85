//! Deterministic CSV and JSON writers.
//!
//! Numbers are written with 17 significant digits (`{:.16e}`), lines end in
//! `\n`, and every file starts with the resolved parameter set.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use super::config::Format;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => json!(format_number(*x)),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A rectangular table with its provenance block.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub provenance: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(provenance: Vec<(String, String)>, columns: Vec<String>) -> Self {
        Self {
            provenance,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.provenance {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Invalid(format!("csv encoding failed: {e}"));
        writer.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::to_csv))
                .map_err(io)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Invalid(format!("csv encoding failed: {e}")))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let provenance: Map<String, Value> = self
            .provenance
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({
            "provenance": provenance,
            "columns": self.columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("json encoding");
        text.push('\n');
        text
    }

    /// Writes `<dir>/<stem>.<ext>` and returns the path.
    pub fn write(&self, dir: &Path, stem: &str, format: Format) -> Result<PathBuf> {
        let path = dir.join(format!("{stem}.{}", format.extension()));
        let text = match format {
            Format::Csv => self.to_csv()?,
            Format::Json => self.to_json(),
        };
        fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(
            vec![("gr".into(), "15".into())],
            vec!["Y".into(), "V[alpha=15deg]".into(), "note".into()],
        );
        t.push(vec![
            Cell::Num(0.0),
            Cell::Num(0.04),
            Cell::Text("a,b".into()),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        let text = sample().to_csv().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# gr = 15");
        assert_eq!(lines[1], "Y,V[alpha=15deg],note");
        assert_eq!(
            lines[2],
            "0.0000000000000000e0,4.0000000000000001e-2,\"a,b\""
        );
        assert!(!text.contains('\r'));
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.220446049250313e-16, -123.456e7] {
            let s = format_number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_mirrors_table() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["provenance"]["gr"], "15");
        assert_eq!(v["columns"][1], "V[alpha=15deg]");
        assert_eq!(v["rows"][0][1], 0.04);
    }
}
