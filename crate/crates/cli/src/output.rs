use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::job::Format;

fn leaf(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(leaf).collect::<Vec<_>>().join(";"),
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
        other => out.push((prefix.to_string(), leaf(other))),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

fn write_table(path: &Path, rows: &[Vec<(String, String)>]) -> io::Result<()> {
    let mut header: Vec<String> = Vec::new();
    for row in rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&header)?;
    for row in rows {
        let record: Vec<&str> =
            header.iter().map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str())).collect();
        w.write_record(&record)?;
    }
    w.flush()
}

/// Splits a report into `<name>.csv` for its scalar leaves and one
/// `<name>_<field>.csv` per array of records.
fn write_csv(dir: &Path, name: &str, report: &Value) -> io::Result<Vec<PathBuf>> {
    let empty = Map::new();
    let fields = report.as_object().unwrap_or(&empty);
    let mut summary = Vec::new();
    let mut written = Vec::new();
    for (k, v) in fields {
        if is_table(v) {
            let rows: Vec<Vec<(String, String)>> = v
                .as_array()
                .expect("checked")
                .iter()
                .map(|item| {
                    let mut row = Vec::new();
                    flatten("", item, &mut row);
                    row
                })
                .collect();
            let path = dir.join(format!("{name}_{k}.csv"));
            write_table(&path, &rows)?;
            written.push(path);
        } else {
            flatten(k, v, &mut summary);
        }
    }
    let path = dir.join(format!("{name}.csv"));
    write_table(&path, &[summary])?;
    written.insert(0, path);
    Ok(written)
}

pub fn write_report(dir: &Path, name: &str, report: &Value, format: Format) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    match format {
        Format::Json => {
            let path = dir.join(format!("{name}.json"));
            let mut text = serde_json::to_string_pretty(report).map_err(io::Error::other)?;
            text.push('\n');
            fs::write(&path, text)?;
            Ok(vec![path])
        }
        Format::Csv => write_csv(dir, name, report),
    }
}
