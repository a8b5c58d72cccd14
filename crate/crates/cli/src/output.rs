//! Rendering of record lists as JSON, CSV or aligned text.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One output row; keys keep insertion order.
pub type Record = Map<String, Value>;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn headers(records: &[Record]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for r in records {
        for k in r.keys() {
            if !out.contains(k) {
                out.push(k.clone());
            }
        }
    }
    out
}

/// Pretty JSON array with a trailing newline.
pub fn to_json(records: &[Record]) -> Result<String> {
    let array = Value::Array(records.iter().cloned().map(Value::Object).collect());
    Ok(serde_json::to_string_pretty(&array)? + "\n")
}

pub fn to_csv(records: &[Record]) -> Result<String> {
    let heads = headers(records);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&heads)?;
    for r in records {
        w.write_record(heads.iter().map(|h| r.get(h).map(cell).unwrap_or_default()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn to_text(records: &[Record]) -> String {
    let heads = headers(records);
    let rows: Vec<Vec<String>> =
        records.iter().map(|r| heads.iter().map(|h| r.get(h).map(cell).unwrap_or_default()).collect()).collect();
    let widths: Vec<usize> = heads
        .iter()
        .enumerate()
        .map(|(i, h)| rows.iter().map(|r| r[i].chars().count()).chain([h.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&heads);
    for r in &rows {
        out += &line(r);
    }
    out
}

pub fn render(records: &[Record], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(records),
        Format::Csv => to_csv(records),
        Format::Text => Ok(to_text(records)),
    }
}
