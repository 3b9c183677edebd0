//! Deterministic JSON and CSV writers. Floats carry 17 significant digits.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::{CliError, CliResult};

/// Scientific notation with 17 significant digits and a signed exponent,
/// e.g. `1.0000000000000001e-1`, `2.0000000000000000e+0`.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

fn reformat(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => {
            if let Some(x) = n.as_f64() {
                *n = fmt_f64(x).parse::<Number>().expect("formatted float is a JSON number");
            }
        }
        Value::Array(items) => items.iter_mut().for_each(reformat),
        Value::Object(map) => map.values_mut().for_each(reformat),
        _ => {}
    }
}

pub fn to_json(value: &impl Serialize) -> CliResult<String> {
    let mut v = serde_json::to_value(value).map_err(|e| CliError::usage(format!("serialization failed: {e}")))?;
    reformat(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::usage(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> CliResult<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, to_json(value)?).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Writes `header` and `rows` as CSV.
pub fn write_csv(dir: &Path, name: &str, header: &[String], rows: &[Vec<String>]) -> CliResult<PathBuf> {
    let path = dir.join(name);
    let wrap = |source| CliError::Csv {
        path: path.clone(),
        source,
    };
    let mut w = csv::Writer::from_path(&path).map_err(wrap)?;
    w.write_record(header).map_err(wrap)?;
    for r in rows {
        w.write_record(r).map_err(wrap)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
