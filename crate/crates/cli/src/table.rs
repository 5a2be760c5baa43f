//! Result tables and their CSV/JSON serialization.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    /// CSV rendering; floats use 17 significant digits.
    pub fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Float(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::UInt(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::UInt(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub kind: String,
    pub config_hash: String,
    pub code_version: String,
    /// Canonical TOML of the config; its SHA-256 is `config_hash`.
    pub config: String,
}

impl Metadata {
    pub fn for_config(config: &ExperimentConfig) -> Self {
        Self {
            kind: config.kind.clone(),
            config_hash: config.hash(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.canonical(),
        }
    }
}

/// Rows in deterministic order plus a kind-specific JSON summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Value,
    pub meta: Metadata,
}

impl ResultTable {
    pub fn new(columns: &[&str], meta: Metadata) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Value::Null,
            meta,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the schema");
        self.rows.push(row);
    }

    /// RFC 4180 CSV with a leading `config_hash` column.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(std::iter::once("config_hash").chain(self.columns.iter().map(String::as_str)))?;
        for row in &self.rows {
            let cells = row.iter().map(Cell::csv);
            w.write_record(std::iter::once(self.meta.config_hash.clone()).chain(cells))?;
        }
        Ok(w.into_inner().map_err(|e| e.into_error())?)
    }

    pub fn records(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), v.json()))
                    .collect();
                Value::Object(m)
            })
            .collect()
    }

    /// JSON document with metadata, summary, and the rows as records.
    pub fn to_json(&self) -> Value {
        json!({
            "meta": self.meta,
            "columns": self.columns,
            "summary": self.summary,
            "rows": self.records(),
        })
    }
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so `path` never holds a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("renaming output into {}", path.display()))?;
    Ok(())
}
