//! Text dump of a partition, one class per line:
//!
//! ```text
//! class 0 SPHERICAL members=1,4,9 centroid=12.5,-3
//! ```
//!
//! Member ids are 1-based, as in TSPLIB files.

use std::fmt::Write as _;

use thiserror::Error;

use super::{ClassState, Shape};
use crate::instance::Point;

#[derive(Debug, Error, PartialEq)]
pub enum DumpError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

pub fn dump_partition(classes: &[ClassState]) -> String {
    let mut out = String::new();
    for (label, c) in classes.iter().enumerate() {
        let ids: Vec<String> = c.members.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(
            out,
            "class {label} {} members={} centroid={},{}",
            c.shape,
            ids.join(","),
            c.centroid.x,
            c.centroid.y
        );
    }
    out
}

/// Reads a dump back. Only members, centroid and shape are restored; labels must count up from 0.
pub fn parse_partition_dump(text: &str) -> Result<Vec<ClassState>, DumpError> {
    let mut classes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let bad = |reason: &str| DumpError::Malformed {
            line,
            reason: reason.to_string(),
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let [kw, label, shape, members, centroid] = fields[..] else {
            return Err(bad("expected 5 fields"));
        };
        if kw != "class" {
            return Err(bad("line must start with `class`"));
        }
        if label.parse::<usize>().ok() != Some(classes.len()) {
            return Err(bad("labels must count up from 0"));
        }
        let shape: Shape = shape.parse().map_err(|e: String| bad(&e))?;
        let members = members
            .strip_prefix("members=")
            .ok_or_else(|| bad("missing members="))?;
        let mut ids = Vec::new();
        for tok in members.split(',').filter(|t| !t.is_empty()) {
            let id: usize = tok.parse().map_err(|_| bad("member id is not an integer"))?;
            if id == 0 {
                return Err(bad("member ids are 1-based"));
            }
            ids.push(id - 1);
        }
        let centroid = centroid
            .strip_prefix("centroid=")
            .ok_or_else(|| bad("missing centroid="))?;
        let (x, y) = centroid.split_once(',').ok_or_else(|| bad("centroid needs x,y"))?;
        let x: f64 = x.parse().map_err(|_| bad("bad centroid x"))?;
        let y: f64 = y.parse().map_err(|_| bad("bad centroid y"))?;
        let mut class = ClassState::seeded(Point::new(x, y));
        ids.sort_unstable();
        class.members = ids;
        class.shape = shape;
        classes.push(class);
    }
    Ok(classes)
}
