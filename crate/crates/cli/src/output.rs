//! Rendering of result documents as CSV (with `#` comment headers) or JSON.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

pub const CONFIG_PREFIX: &str = "# config = ";
pub const TIMESTAMP_PREFIX: &str = "# generated_unix = ";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => x.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// One curve or row group, labelled in the output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub label: String,
    pub meta: BTreeMap<String, Value>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            meta: BTreeMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl Serialize) -> Self {
        self.meta.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn column(&self, columns: &[String], name: &str) -> Option<Vec<f64>> {
        let j = columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r.get(j).and_then(Cell::as_f64)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub columns: Vec<String>,
    pub meta: BTreeMap<String, Value>,
    pub tables: Vec<Table>,
}

impl Document {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            meta: BTreeMap::new(),
            tables: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl Serialize) -> Self {
        self.meta.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn table(&self, label: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.label == label)
    }
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

pub fn render(doc: &Document, cfg: &RunConfig, out: &mut impl Write) -> Result<()> {
    match cfg.format {
        Format::Csv => render_csv(doc, cfg, out),
        Format::Json => render_json(doc, cfg, out),
    }
}

fn render_csv(doc: &Document, cfg: &RunConfig, out: &mut impl Write) -> Result<()> {
    writeln!(out, "# jostkohn {}", doc.command)?;
    writeln!(out, "{CONFIG_PREFIX}{}", serde_json::to_string(cfg)?)?;
    if cfg.timestamp {
        writeln!(out, "{TIMESTAMP_PREFIX}{}", unix_now())?;
    }
    for (k, v) in &doc.meta {
        writeln!(out, "# {k} = {v}")?;
    }
    for t in &doc.tables {
        for (k, v) in &t.meta {
            writeln!(out, "# [{}] {k} = {v}", t.label)?;
        }
    }
    let mut w = csv::Writer::from_writer(&mut *out);
    let mut header = vec!["curve".to_string()];
    header.extend(doc.columns.iter().cloned());
    w.write_record(&header)?;
    for t in &doc.tables {
        for row in &t.rows {
            let mut rec = vec![t.label.clone()];
            rec.extend(row.iter().map(Cell::render));
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn render_json(doc: &Document, cfg: &RunConfig, out: &mut impl Write) -> Result<()> {
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), Value::String(doc.command.clone()));
    obj.insert("config".into(), serde_json::to_value(cfg)?);
    if cfg.timestamp {
        obj.insert("generated_unix".into(), Value::from(unix_now()));
    }
    obj.insert("meta".into(), serde_json::to_value(&doc.meta)?);
    obj.insert("columns".into(), serde_json::to_value(&doc.columns)?);
    obj.insert("curves".into(), serde_json::to_value(&doc.tables)?);
    serde_json::to_writer_pretty(&mut *out, &Value::Object(obj))?;
    writeln!(out)?;
    Ok(())
}

/// Recovers the config echoed into a CSV or JSON output file.
pub fn read_echo(text: &str) -> Result<RunConfig> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text)?;
        let cfg = v
            .get("config")
            .ok_or_else(|| CliError::Usage("JSON file has no `config` entry".into()))?;
        return Ok(serde_json::from_value(cfg.clone())?);
    }
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix(CONFIG_PREFIX))
        .ok_or_else(|| CliError::Usage("file carries no config echo".into()))?;
    Ok(serde_json::from_str(line)?)
}
