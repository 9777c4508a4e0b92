//! Report emission. JSON keeps insertion order; CSV flattens nested objects
//! into dotted columns and stores arrays as JSON text.

use serde_json::{json, Map, Value};
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Status {
    pub ok: bool,
    pub exit_code: i32,
    pub error: Option<String>,
}

pub fn write_report(out: &mut dyn Write, format: Format, command: &str, records: &[Value], status: &Status) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(out, command, records, status),
        Format::Csv => write_csv(out, records, status),
    }
}

fn status_value(status: &Status, n: usize) -> Value {
    json!({
        "ok": status.ok,
        "exit_code": status.exit_code,
        "error": status.error,
        "records": n,
    })
}

fn write_json(out: &mut dyn Write, command: &str, records: &[Value], status: &Status) -> std::io::Result<()> {
    let report = json!({
        "command": command,
        "records": records,
        "status": status_value(status, records.len()),
    });
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)
}

fn flatten(prefix: &str, v: &Value, cells: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, cells);
            }
        }
        Value::Array(_) => cells.push((prefix.to_string(), v.to_string())),
        Value::String(s) => cells.push((prefix.to_string(), s.clone())),
        Value::Null => cells.push((prefix.to_string(), String::new())),
        other => cells.push((prefix.to_string(), other.to_string())),
    }
}

fn write_csv(out: &mut dyn Write, records: &[Value], status: &Status) -> std::io::Result<()> {
    let rows: Vec<Map<String, Value>> = records
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten("", r, &mut cells);
            cells.into_iter().map(|(k, v)| (k, Value::String(v))).collect()
        })
        .collect();
    // header: union of columns in first-seen order
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for k in row.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    {
        let mut w = csv::Writer::from_writer(&mut *out);
        if !header.is_empty() {
            w.write_record(&header)?;
        }
        for row in &rows {
            w.write_record(header.iter().map(|k| row.get(k).and_then(Value::as_str).unwrap_or("")))?;
        }
        w.flush()?;
    }
    match &status.error {
        None => writeln!(out, "# status: ok, {} records", records.len()),
        Some(e) => writeln!(out, "# status: error (exit {}), {} records: {e}", status.exit_code, records.len()),
    }
}
