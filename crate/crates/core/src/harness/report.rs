//! Bit-stable report serialization.
//!
//! JSON objects are written with sorted keys and every float in scientific
//! notation with 17 significant digits (`{:.16e}`), which round-trips exactly
//! through `f64` parsing. CSV has one row per (inequality, trial):
//!
//! `id,trial,n,s,k,pass,min_slack,min_rel_slack,lhs,rhs,z_re,z_im,bracket,error`

use super::SuiteReport;
use crate::error::{Error, Result};
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::InvalidArgument(format!("format must be json or csv, got {other:?}"))),
        }
    }
}

fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = |out: &mut String, depth: usize| out.push_str(&"  ".repeat(depth));
    match value {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&value.to_string()),
        Value::Number(num) => match (num.as_u64(), num.as_i64(), num.as_f64()) {
            (Some(u), _, _) => write!(out, "{u}").unwrap(),
            (None, Some(i), _) => write!(out, "{i}").unwrap(),
            (None, None, Some(f)) => out.push_str(&fmt_float(f)),
            _ => out.push_str(&num.to_string()),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            // serde_json's default map is ordered by key
            for (i, (key, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Serializes anything through the stable JSON writer.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let tree = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&mut out, &tree, 0);
    out.push('\n');
    Ok(out)
}

pub fn to_csv(report: &SuiteReport) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let opt = |x: Option<f64>| x.map(fmt_float).unwrap_or_default();
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    writer
        .write_record([
            "id", "trial", "n", "s", "k", "pass", "min_slack", "min_rel_slack", "lhs", "rhs", "z_re", "z_im", "bracket", "error",
        ])
        .map_err(io)?;
    for row in &report.rows {
        writer
            .write_record([
                row.id.to_string(),
                row.trial.to_string(),
                row.n.map(|n| n.to_string()).unwrap_or_default(),
                row.s.map(|s| s.to_string()).unwrap_or_default(),
                opt(row.k),
                row.pass.to_string(),
                opt(row.min_slack),
                opt(row.min_rel_slack),
                opt(row.lhs),
                opt(row.rhs),
                opt(row.z.map(|z| z.re)),
                opt(row.z.map(|z| z.im)),
                opt(row.bracket),
                row.error.clone().unwrap_or_default(),
            ])
            .map_err(io)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit_report(report: &SuiteReport, format: ReportFormat, path: &Path) -> Result<()> {
    let text = match format {
        ReportFormat::Json => to_json(report)?,
        ReportFormat::Csv => to_csv(report)?,
    };
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn floats_use_fixed_scientific_form() {
        let mut map = BTreeMap::new();
        map.insert("b", vec![0.1, -2.5e-300, 1.0]);
        map.insert("a", vec![3.0]);
        let text = to_json(&map).unwrap();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
        assert!(text.contains("-2.5000000000000000e-300"), "{text}");
        let back: BTreeMap<String, Vec<f64>> = serde_json::from_str(&text).unwrap();
        assert_eq!(back["b"], vec![0.1, -2.5e-300, 1.0]);
    }

    #[test]
    fn integers_stay_integers() {
        let text = to_json(&(7u64, -3i64, true, "x")).unwrap();
        assert_eq!(text, "[\n  7,\n  -3,\n  true,\n  \"x\"\n]\n");
    }
}
