//! Best-known tour lengths, read from `name,value` CSV rows.
//!
//! Lines starting with `#` are comments. A leading `name,optimum` header row is skipped.
//! Names are matched case-insensitively.

use std::collections::BTreeMap;

use log::warn;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OptimaError {
    #[error("line {line}: expected `name,value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: optimum `{value}` for `{name}` is not a positive number")]
    NotNumeric {
        line: usize,
        name: String,
        value: String,
    },
    #[error("csv: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OptimaTable {
    values: BTreeMap<String, f64>,
    duplicates: Vec<String>,
}

impl OptimaTable {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(&name.to_ascii_lowercase()).copied()
    }

    pub fn insert(&mut self, name: &str, value: f64) {
        self.values.insert(name.to_ascii_lowercase(), value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Names that appeared more than once; the last row won.
    pub fn duplicates(&self) -> &[String] {
        &self.duplicates
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

pub fn load_optima(text: &str) -> Result<OptimaTable, OptimaError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut table = OptimaTable::default();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| OptimaError::Csv(e.to_string()))?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(idx + 1);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(OptimaError::Malformed {
                line,
                text: record.iter().collect::<Vec<_>>().join(","),
            });
        }
        let name = &record[0];
        let raw = &record[1];
        if idx == 0 && name.eq_ignore_ascii_case("name") {
            continue;
        }
        let value: f64 = match raw.parse() {
            Ok(v) if v > 0.0 && f64::is_finite(v) => v,
            _ => {
                return Err(OptimaError::NotNumeric {
                    line,
                    name: name.to_string(),
                    value: raw.to_string(),
                })
            }
        };
        let key = name.to_ascii_lowercase();
        if table.values.insert(key.clone(), value).is_some() {
            warn!("optima line {line}: duplicate entry for `{name}`, keeping the later value {value}");
            table.duplicates.push(key);
        }
    }
    Ok(table)
}
