use std::io::Write;

use anyhow::Result;
use serde_json::{Map, Value};

use crate::args::Format;

/// Writes `data` as JSON or CSV, or `text` when no format was asked for. Objects become
/// `key,value` rows; arrays of objects become one row per element.
pub fn emit(out: &mut dyn Write, format: Option<Format>, data: &Value, text: &str) -> Result<()> {
    match format {
        None => write!(out, "{text}")?,
        Some(Format::Json) => writeln!(out, "{}", serde_json::to_string_pretty(data)?)?,
        Some(Format::Csv) => write_csv(out, data)?,
    }
    Ok(())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_csv(out: &mut dyn Write, data: &Value) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match data {
        Value::Array(rows) => {
            let header: Vec<String> = rows.first().and_then(Value::as_object).map(|o| o.keys().cloned().collect()).unwrap_or_default();
            if !header.is_empty() {
                w.write_record(&header)?;
            }
            for r in rows {
                let o = r.as_object().cloned().unwrap_or_else(Map::new);
                w.write_record(header.iter().map(|k| cell(o.get(k).unwrap_or(&Value::Null))))?;
            }
        }
        Value::Object(o) => {
            w.write_record(["key", "value"])?;
            for (k, v) in o {
                w.write_record([k.as_str(), &cell(v)])?;
            }
        }
        other => w.write_record([cell(other)])?,
    }
    w.flush()?;
    Ok(())
}
