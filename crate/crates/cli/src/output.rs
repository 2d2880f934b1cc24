use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use cspath::{Complex64, Error, Result};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn cjson(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Rows of scalar JSON values under a fixed header.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidInput(format!("CSV encoding failed: {e}"));
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("CSV encoding failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj = self.header.iter().cloned().zip(r.iter().cloned()).collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.17e}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

/// CSV gets the bare table; JSON wraps it with the run metadata.
pub fn emit(out: Option<&PathBuf>, format: Format, meta: &Value, table: &Table) -> Result<()> {
    let text = match format {
        Format::Csv => table.to_csv()?,
        Format::Json => {
            let mut v = meta.clone();
            v["rows"] = table.to_json();
            pretty(&v)
        }
    };
    write_text(out, &text)
}

pub fn write_text(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidInput(format!("cannot write to stdout: {e}")))
        }
    }
}
