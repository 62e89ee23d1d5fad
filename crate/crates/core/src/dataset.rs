//! Tabular datasets and their CSV / JSON encodings.
//!
//! Numbers are written in shortest round-trip form, so every emitted value
//! parses back to the same `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Named table with a fixed column schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    schema: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, schema: Vec<String>) -> Self {
        Dataset {
            name: name.into(),
            schema,
            rows: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push_row(&mut self, row: Vec<Value>) -> Result<()> {
        if row.len() != self.schema.len() {
            return Err(Error::SchemaMismatch(format!(
                "dataset '{}': row has {} fields, schema has {}",
                self.name,
                row.len(),
                self.schema.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.schema.iter().position(|c| c == name)
    }

    /// Numeric column by name; `None` if absent or non-numeric.
    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows
            .iter()
            .map(|r| match r[i] {
                Value::Num(v) => Some(v),
                Value::Int(v) => Some(v as f64),
                Value::Text(_) => None,
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.schema.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match v {
                    Value::Num(x) => write!(out, "{x}").unwrap(),
                    Value::Int(x) => write!(out, "{x}").unwrap(),
                    Value::Text(s) => push_csv_text(&mut out, s),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let mut array = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            for (key, v) in self.schema.iter().zip(row) {
                let jv = match v {
                    Value::Num(x) => serde_json::Number::from_f64(*x)
                        .map(serde_json::Value::Number)
                        .ok_or_else(|| {
                            Error::SchemaMismatch(format!("non-finite value in column '{key}'"))
                        })?,
                    Value::Int(x) => serde_json::Value::from(*x),
                    Value::Text(s) => serde_json::Value::from(s.as_str()),
                };
                obj.insert(key.clone(), jv);
            }
            array.push(serde_json::Value::Object(obj));
        }
        let mut s = serde_json::to_string_pretty(&serde_json::Value::Array(array))
            .expect("serializing a json value cannot fail");
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => Ok(self.to_csv()),
            Format::Json => self.to_json(),
        }
    }
}

fn push_csv_text(out: &mut String, s: &str) {
    if s.contains([',', '"', '\n', '\r']) {
        out.push('"');
        out.push_str(&s.replace('"', "\"\""));
        out.push('"');
    } else {
        out.push_str(s);
    }
}

pub fn emit_dataset(dataset: &Dataset, format: Format, path: &Path) -> Result<()> {
    let body = dataset.render(format)?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, body).map_err(|e| Error::io(path, e))
}

/// `prefix_0, prefix_1, …` for `range`.
pub fn indexed_columns(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|k| format!("{prefix}_{k}")).collect()
}
