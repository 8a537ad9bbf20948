//! Per-sample output rows with a metadata header, as CSV or JSON.
//!
//! CSV layout: `# key=value` metadata lines, the header `l,s,x,y,tau,nu,k`,
//! then one row per sample. Numbers use the shortest representation that
//! parses back to the same f64; infinite curvature is written `inf`/`-inf`.

use serde_json::{json, Map, Value};
use tractrix_core::{Termination, Trace};

use crate::CliError;

pub const COLUMNS: [&str; 7] = ["l", "s", "x", "y", "tau", "nu", "k"];

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub meta: Vec<(String, String)>,
    pub rows: Vec<[f64; 7]>,
}

pub fn termination_tag(t: Termination) -> String {
    match t {
        Termination::ReachedLength => "reached-length".into(),
        Termination::Stopped { nu } => format!("stopped(nu={nu})"),
        Termination::Closed => "closed".into(),
    }
}

/// Optional values print as `none`.
pub fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".into(), |x| x.to_string())
}

impl OutputRecord {
    /// Rows for the samples at `indices` (all samples when `None`).
    pub fn from_trace(
        meta: Vec<(String, String)>,
        trace: &Trace,
        indices: Option<&[usize]>,
    ) -> Self {
        let row = |i: usize| {
            let s = &trace.samples[i];
            [
                s.l,
                s.s,
                s.pose.position.x,
                s.pose.position.y,
                s.pose.tangent_angle,
                s.nu,
                s.curvature,
            ]
        };
        let rows = match indices {
            Some(ix) => ix.iter().map(|&i| row(i)).collect(),
            None => (0..trace.len()).map(row).collect(),
        };
        OutputRecord { meta, rows }
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&COLUMNS.join(","));
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut meta = Vec::new();
        let mut rows = Vec::new();
        let mut header = false;
        for (no, line) in text.lines().enumerate() {
            let bad = |what: &str| CliError::Usage(format!("csv line {}: {what}", no + 1));
            if let Some(m) = line.strip_prefix("# ") {
                if header {
                    return Err(bad("metadata after the header"));
                }
                let (k, v) = m
                    .split_once('=')
                    .ok_or_else(|| bad("metadata is not key=value"))?;
                meta.push((k.to_string(), v.to_string()));
                continue;
            }
            if !header {
                if line != COLUMNS.join(",") {
                    return Err(bad("expected header l,s,x,y,tau,nu,k"));
                }
                header = true;
                continue;
            }
            let mut row = [0.0; 7];
            let mut n = 0;
            for (i, cell) in line.split(',').enumerate() {
                if i >= 7 {
                    return Err(bad("too many columns"));
                }
                row[i] = cell
                    .parse()
                    .map_err(|_| bad(&format!("`{cell}` is not a number")))?;
                n += 1;
            }
            if n != 7 {
                return Err(bad("too few columns"));
            }
            rows.push(row);
        }
        if !header {
            return Err(CliError::Usage("csv has no header".into()));
        }
        Ok(OutputRecord { meta, rows })
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|&v| num(v)).collect()))
            .collect();
        json!({ "meta": meta, "columns": COLUMNS, "rows": rows })
    }
}

/// JSON number, or the strings "inf", "-inf", "nan" for non-finite values.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or_else(|| Value::String(v.to_string()), Value::Number)
}
