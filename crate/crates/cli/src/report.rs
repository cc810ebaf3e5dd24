//! The report document and its table rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certs::Certificate;

pub const SCHEMA: &str = "valgcd.report/1";

#[derive(Debug, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    #[serde(default)]
    pub diagnostics: Value,
}

impl Document {
    pub fn new(command: &str, inputs: Value, result: Value) -> Self {
        Document {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            inputs,
            result,
            certificates: Vec::new(),
            diagnostics: Value::Object(Default::default()),
        }
    }

    pub fn with_certificates(mut self, certs: Vec<Certificate>) -> Self {
        self.certificates = certs;
        self
    }

    pub fn with_diagnostics(mut self, diagnostics: Value) -> Self {
        self.diagnostics = diagnostics;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (title, v) in [("inputs", &self.inputs), ("result", &self.result), ("diagnostics", &self.diagnostics)] {
            if is_empty(v) {
                continue;
            }
            out.push_str(&format!("\n{title}\n"));
            render(v, 1, &mut out);
        }
        if !self.certificates.is_empty() {
            let kinds: Vec<&str> = self.certificates.iter().map(Certificate::kind).collect();
            out.push_str(&format!(
                "\ncertificates: {} ({}); use --format json and `valgcd verify` to re-check\n",
                kinds.len(),
                summarize(&kinds)
            ));
        }
        out
    }
}

fn summarize(kinds: &[&str]) -> String {
    let mut counts: Vec<(&str, usize)> = Vec::new();
    for k in kinds {
        match counts.iter_mut().find(|(n, _)| n == k) {
            Some(e) => e.1 += 1,
            None => counts.push((k, 1)),
        }
    }
    counts.iter().map(|(k, n)| format!("{n} {k}")).collect::<Vec<_>>().join(", ")
}

fn is_empty(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn cell(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| serde_json::to_string(v).expect("values serialize"))
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k:<width$}  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) => table(rows, depth, out),
        Value::Array(rows) => {
            for x in rows {
                out.push_str(&format!("{pad}- {}\n", cell(x)));
            }
        }
        x => out.push_str(&format!("{pad}{}\n", cell(x))),
    }
}

fn table(rows: &[Value], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("object rows").keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map_or_else(String::new, cell)).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |vals: &[String]| {
        let parts: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&cols));
    for r in &cells {
        out.push_str(&line(r));
    }
}
