//! Rendering of command results as JSON, CSV or aligned text.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use framelab::Verdict;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Rows with a fixed header; emitted verbatim for CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Shortest round-tripping decimal form.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub struct Outcome {
    pub result: Value,
    pub table: Option<Table>,
    pub verdict: Option<Verdict>,
}

impl Outcome {
    pub fn value<T: Serialize>(v: &T) -> Result<Self> {
        Ok(Self {
            result: serde_json::to_value(v)?,
            table: None,
            verdict: None,
        })
    }

    pub fn with_verdict(mut self, v: Verdict) -> Self {
        self.verdict = Some(v);
        self
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    /// 0 unless the analysis produced a failing verdict.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(Verdict::Fail) => 1,
            _ => 0,
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn render<W: Write>(w: &mut W, command: &str, outcome: &Outcome, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            let mut top = Map::new();
            top.insert("schema".into(), json!(SCHEMA));
            top.insert("command".into(), json!(command));
            top.insert("result".into(), outcome.result.clone());
            if let Some(v) = outcome.verdict {
                top.insert("verdict".into(), serde_json::to_value(v)?);
            }
            serde_json::to_writer_pretty(&mut *w, &Value::Object(top))?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut cw = csv::Writer::from_writer(&mut *w);
            match &outcome.table {
                Some(t) => {
                    cw.write_record(&t.headers)?;
                    for r in &t.rows {
                        cw.write_record(r)?;
                    }
                }
                None => {
                    cw.write_record(["key", "value"])?;
                    let mut flat = Vec::new();
                    flatten("", &outcome.result, &mut flat);
                    for (k, v) in flat {
                        cw.write_record([k, v])?;
                    }
                }
            }
            cw.flush()?;
        }
        Format::Pretty => {
            writeln!(w, "{command}")?;
            if let Some(v) = outcome.verdict {
                writeln!(w, "verdict: {}", serde_json::to_value(v)?.as_str().unwrap_or("?"))?;
            }
            match &outcome.table {
                Some(t) => {
                    let widths: Vec<usize> = (0..t.headers.len())
                        .map(|c| t.rows.iter().map(|r| r[c].len()).chain([t.headers[c].len()]).max().unwrap_or(0))
                        .collect();
                    let line = |cells: &[String]| -> String {
                        cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, w)| format!("{c:>w$}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    writeln!(w, "{}", line(&t.headers))?;
                    for r in &t.rows {
                        writeln!(w, "{}", line(r))?;
                    }
                }
                None => {
                    let mut flat = Vec::new();
                    flatten("", &outcome.result, &mut flat);
                    let width = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in flat {
                        writeln!(w, "{k:<width$}  {v}")?;
                    }
                }
            }
        }
    }
    Ok(())
}
