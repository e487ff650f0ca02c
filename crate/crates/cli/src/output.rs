use std::io::Write;

use anyhow::Result;
use serde_json::{Map, Value};
use theta_core::CheckResult;

use crate::args::Format;

/// Flattens a JSON value into a single CSV or text field.
fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(";"),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join(";"),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Writes a flat record: JSON object, one-row CSV with header, or `key: value` lines.
pub fn record(out: &mut impl Write, format: Format, fields: &Map<String, Value>) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, fields)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(fields.keys())?;
            w.write_record(fields.values().map(scalar))?;
            w.flush()?;
        }
        Format::Text => {
            for (k, v) in fields {
                writeln!(out, "{k}: {}", scalar(v))?;
            }
        }
    }
    Ok(())
}

/// Writes suite results. CSV has exactly the columns `suite,case,verdict,residual`.
pub fn checks(out: &mut impl Write, format: Format, results: &[CheckResult]) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, results)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["suite", "case", "verdict", "residual"])?;
            for r in results {
                w.write_record([
                    r.suite.as_str(),
                    r.case.as_str(),
                    &r.verdict.to_string(),
                    &format!("{:e}", r.residual),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in results {
                writeln!(
                    out,
                    "{:<13}{:<20} {:<32} {}",
                    r.verdict.to_string(),
                    r.suite,
                    r.case,
                    r.detail
                )?;
            }
            let failed = results.iter().filter(|r| r.verdict.is_failure()).count();
            writeln!(out, "{} checks, {failed} failed", results.len())?;
        }
    }
    Ok(())
}
