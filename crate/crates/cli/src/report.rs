//! Run reports and their JSON / text renderings.
//!
//! JSON keys: `command`, `verdict`, `message`, `inputs`, `result`,
//! `elapsed_ms`. The text form walks the same JSON value, so both carry
//! identical data; arrays of objects become aligned tables.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: Verdict,
    pub message: Option<String>,
    pub inputs: Value,
    pub result: Value,
    /// Wall-clock time; only filled in with `--timing` so that JSON output
    /// stays byte-stable.
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn render_report(report: &RunReport, format: Format) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_object(&value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().map(|i| scalar(i).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|i| i.is_array()) => Some(format!(
            "[{}]",
            items.iter().map(|i| scalar(i).unwrap_or_else(|| i.to_string())).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render_object(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let Value::Object(map) = v else {
        out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_else(|| v.to_string())));
        return;
    };
    for (key, val) in map {
        if let Some(s) = scalar(val) {
            out.push_str(&format!("{pad}{key}: {s}\n"));
        } else if let Value::Array(rows) = val {
            out.push_str(&format!("{pad}{key}:\n"));
            render_table(rows, indent + 2, out);
        } else {
            out.push_str(&format!("{pad}{key}:\n"));
            render_object(val, indent + 2, out);
        }
    }
}

fn flatten(prefix: &str, v: &Value, cells: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, inner, cells);
            }
        }
        other => cells.push((prefix.to_string(), scalar(other).unwrap_or_else(|| other.to_string()))),
    }
}

fn render_table(rows: &[Value], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten("", r, &mut cells);
            cells
        })
        .collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cell = |row: &Vec<(String, String)>, col: &str| {
        row.iter().find(|(k, _)| k == col).map(|(_, v)| v.clone()).unwrap_or_default()
    };
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| flat.iter().map(|r| cell(r, c).len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| {
        cells.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ")
    };
    out.push_str(&format!("{pad}{}\n", line(columns.clone())));
    for row in &flat {
        out.push_str(&format!("{pad}{}\n", line(columns.iter().map(|c| cell(row, c)).collect())));
    }
}
