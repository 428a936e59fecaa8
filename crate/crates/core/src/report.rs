//! JSON and CSV rendering of check reports.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::verifier::{Check, CheckReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Meta {
    pub command: String,
    pub version: String,
    pub config: Value,
}

/// A rendered document: meta, checks, verdict, notes and optional payload.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Document {
    pub meta: Meta,
    pub checks: Vec<Check>,
    pub verdict: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Document {
    pub fn new(command: &str, config: Value) -> Self {
        Document {
            meta: Meta { command: command.to_string(), version: VERSION.to_string(), config },
            checks: Vec::new(),
            verdict: true,
            notes: Vec::new(),
            data: None,
        }
    }

    pub fn from_report(command: &str, config: Value, rep: &CheckReport) -> Self {
        let mut d = Document::new(command, config);
        d.meta.config["metadata"] = json!(rep.metadata);
        d.checks = rep.checks.clone();
        d.verdict = rep.verdict;
        d.notes = rep.notes.clone();
        d
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    /// Pretty JSON with a trailing newline; field order is fixed by the types.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::InvalidInput(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// One row per check, or one row per payload record when the payload is a list.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidInput(e.to_string());
        if let Some(Value::Array(rows)) = &self.data {
            write_rows(&mut w, rows).map_err(io)?;
            return finish(w);
        }
        w.write_record(["name", "max_residual", "tolerance", "pass", "samples"]).map_err(io)?;
        for c in &self.checks {
            let r = if c.max_residual.is_finite() { format!("{:e}", c.max_residual) } else { "inf".into() };
            w.write_record([
                c.name.clone(),
                r,
                format!("{:e}", c.tolerance),
                c.pass.to_string(),
                c.samples.to_string(),
            ])
            .map_err(io)?;
        }
        finish(w)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_rows(w: &mut csv::Writer<Vec<u8>>, rows: &[Value]) -> std::result::Result<(), csv::Error> {
    let Some(Value::Object(first)) = rows.first() else {
        return Ok(());
    };
    let keys: Vec<String> = first.keys().cloned().collect();
    w.write_record(&keys)?;
    for r in rows {
        w.write_record(keys.iter().map(|k| r.get(k).map(cell).unwrap_or_default()))?;
    }
    Ok(())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::ReportMeta;

    #[test]
    fn non_finite_residual_is_null() {
        let mut rep = CheckReport::new(ReportMeta::default());
        rep.push(Check::new("x", f64::NAN, 1.0, 1));
        let d = Document::from_report("t", json!({}), &rep);
        let s = d.to_json().unwrap();
        assert!(s.contains("\"max_residual\": null"));
        assert!(s.ends_with("}\n"));
        assert!(!d.verdict);
        assert!(d.to_csv().unwrap().contains("x,inf,1e0,false,1"));
    }

    #[test]
    fn payload_rows_become_csv() {
        let d = Document::new("table", json!({})).with_data(json!([{"a": 1, "b": "I"}, {"a": 2, "b": "IV"}]));
        assert_eq!(d.to_csv().unwrap(), "a,b\n1,I\n2,IV\n");
    }
}
