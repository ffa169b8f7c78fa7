//! Reading single-column series and writing result artifacts.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{FouError, Result};
use crate::predictor::ForecastResult;

fn io_err(path: &Path, e: impl std::fmt::Display) -> FouError {
    FouError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

/// Parses a one-column numeric CSV. The first line may be a header; blank
/// lines are skipped; LF and CRLF endings are both accepted. `origin` names
/// the source in error messages.
pub fn parse_series_csv(text: &str, origin: &str) -> Result<Vec<f64>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let field = line.trim_end_matches('\r').trim();
        if field.is_empty() {
            continue;
        }
        let field = field.trim_matches('"');
        if field.contains(',') {
            return Err(FouError::Parse {
                path: origin.to_string(),
                line: line_no,
                msg: format!("expected a single column, found `{field}`"),
            });
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(v) => {
                return Err(FouError::Parse {
                    path: origin.to_string(),
                    line: line_no,
                    msg: format!("value {v} is not finite"),
                })
            }
            Err(_) if values.is_empty() && idx == first_content_line(text) => {}
            Err(_) => {
                return Err(FouError::Parse {
                    path: origin.to_string(),
                    line: line_no,
                    msg: format!("`{field}` is not a number"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(FouError::Parse {
            path: origin.to_string(),
            line: 0,
            msg: "no numeric values".into(),
        });
    }
    Ok(values)
}

fn first_content_line(text: &str) -> usize {
    text.lines().position(|l| !l.trim().is_empty()).unwrap_or(0)
}

pub fn read_series_csv(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_series_csv(&text, &path.display().to_string())
}

pub fn series_csv(values: &[f64]) -> String {
    let mut s = String::from("value\n");
    for v in values {
        s.push_str(&format!("{v}\n"));
    }
    s
}

/// `index,target,prediction` with one-based observation indices.
pub fn forecast_csv(f: &ForecastResult) -> String {
    let mut s = String::from("index,target,prediction\n");
    for ((i, t), p) in f.indices.iter().zip(&f.targets).zip(&f.predictions) {
        s.push_str(&format!("{},{t},{p}\n", i + 1));
    }
    s
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| FouError::InvalidConfig(e.to_string()))
}

pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        }
    }
    fs::write(path, contents).map_err(|e| io_err(path, e))
}
