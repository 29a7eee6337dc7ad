//! Report document and its JSON/CSV serialization.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliResult;

pub const SCHEMA_VERSION: u32 = 1;
/// Significant digits kept for every float in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub diagnostics: Diagnostics,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: Value::Object(Map::new()),
            outputs: Value::Object(Map::new()),
            diagnostics: Diagnostics { seed, tolerances: BTreeMap::new(), timings_ms: None },
            checks: Vec::new(),
            table: None,
        }
    }

    pub fn inputs(mut self, v: Value) -> Self {
        self.inputs = v;
        self
    }

    pub fn outputs(mut self, v: Value) -> Self {
        self.outputs = v;
        self
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.diagnostics.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn check(mut self, name: &str, passed: bool) -> Self {
        self.checks.push(Check { name: name.to_string(), passed });
        self
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<Value>>) -> Self {
        self.table = Some(Table { header: header.iter().map(|h| h.to_string()).collect(), rows });
        self
    }

    /// Rounds every float to [`SIGNIFICANT_DIGITS`] so output is stable and
    /// re-parses to the same value.
    pub fn normalized(self) -> CliResult<Report> {
        let mut v = serde_json::to_value(&self)?;
        round_floats(&mut v);
        Ok(serde_json::from_value(v)?)
    }
}

pub fn round_f64(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round_f64(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn emit_json(report: &Report, out: &mut dyn Write) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, report).map_err(|e| {
        if e.is_io() {
            crate::error::CliError::Io { path: "<output>".into(), source: e.into() }
        } else {
            e.into()
        }
    })?;
    writeln!(out).map_err(|e| crate::error::CliError::Io { path: "<output>".into(), source: e })?;
    Ok(())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

/// Tabular reports become header plus rows; others become `key,value` pairs
/// of the flattened outputs and checks.
pub fn emit_csv(report: &Report, out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(t) = &report.table {
        w.write_record(&t.header)?;
        for row in &t.rows {
            w.write_record(row.iter().map(cell))?;
        }
    } else {
        let mut pairs = Vec::new();
        flatten("", &report.outputs, &mut pairs);
        for c in &report.checks {
            pairs.push((format!("check.{}", c.name), c.passed.to_string()));
        }
        w.write_record(["key", "value"])?;
        for (k, v) in pairs {
            w.write_record([k, v])?;
        }
    }
    w.flush().map_err(|e| crate::error::CliError::Io { path: "<output>".into(), source: e })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_f64(2.0 / 3.0), 0.666666666667);
        assert_eq!(round_f64(-0.5), -0.5);
        assert_eq!(round_f64(0.0), 0.0);
    }

    #[test]
    fn json_round_trip() {
        let r = Report::new("demo", 7)
            .outputs(json!({"x": 1.0 / 3.0, "n": 3, "v": [0.1, 0.2]}))
            .tolerance("abs", 1e-12)
            .check("ok", true)
            .normalized()
            .unwrap();
        let mut buf = Vec::new();
        emit_json(&r, &mut buf).unwrap();
        let back: Report = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, r);
        let mut again = Vec::new();
        emit_json(&back, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn csv_layouts() {
        let r = Report::new("t", 0).table(&["a", "b"], vec![vec![json!(1), json!("x")]]);
        let mut buf = Vec::new();
        emit_csv(&r, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,x\n");
        let r = Report::new("t", 0).outputs(json!({"p": {"q": 2}})).check("c", false);
        let mut buf = Vec::new();
        emit_csv(&r, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "key,value\np.q,2\ncheck.c,false\n");
    }
}
