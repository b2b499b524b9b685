//! Hand-picked initial centroids, one `x=` row and one `y=` row per instance.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! pr136
//! x= 5000 5000 5000 5000 12000 12000 12000 12000
//! y= 3000 5000 8000 10000 10000 8000 5000 3000
//! ```
//!
//! A bare word starts a new instance block. A file holding a single block may omit the name.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::instance::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    pub instance_name: String,
    pub centroids: Vec<Point>,
}

impl SeedSet {
    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SeedError {
    #[error("seed file contains no centroids")]
    Empty,
    #[error("line {line}: cannot parse `{text}` as a coordinate")]
    BadValue { line: usize, text: String },
    #[error("line {line}: `{row}=` row given twice for `{name}`")]
    DuplicateRow { line: usize, row: char, name: String },
    #[error("`{name}`: missing `{row}=` row")]
    MissingRow { name: String, row: char },
    #[error("`{name}`: {xs} x values but {ys} y values")]
    CountMismatch { name: String, xs: usize, ys: usize },
    #[error("`{name}`: block has no centroids")]
    EmptyBlock { name: String },
}

#[derive(Default)]
struct Block {
    name: String,
    xs: Option<Vec<f64>>,
    ys: Option<Vec<f64>>,
}

impl Block {
    fn finish(self) -> Result<SeedSet, SeedError> {
        let xs = self.xs.ok_or_else(|| SeedError::MissingRow {
            name: self.name.clone(),
            row: 'x',
        })?;
        let ys = self.ys.ok_or_else(|| SeedError::MissingRow {
            name: self.name.clone(),
            row: 'y',
        })?;
        if xs.len() != ys.len() {
            return Err(SeedError::CountMismatch {
                name: self.name,
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if xs.is_empty() {
            return Err(SeedError::EmptyBlock { name: self.name });
        }
        Ok(SeedSet {
            instance_name: self.name,
            centroids: xs.into_iter().zip(ys).map(|(x, y)| Point::new(x, y)).collect(),
        })
    }

    fn is_blank(&self) -> bool {
        self.xs.is_none() && self.ys.is_none()
    }
}

fn parse_row(line: usize, rest: &str) -> Result<Vec<f64>, SeedError> {
    rest.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>().map_err(|_| SeedError::BadValue {
                line,
                text: tok.to_string(),
            })
        })
        .collect()
}

/// Parses every block of a seed file, in file order.
pub fn parse_seed_blocks(text: &str) -> Result<Vec<SeedSet>, SeedError> {
    let mut blocks = Vec::new();
    let mut current = Block::default();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        let row = if lower.starts_with("x=") {
            Some('x')
        } else if lower.starts_with("y=") {
            Some('y')
        } else {
            None
        };
        match row {
            Some(r) => {
                let values = parse_row(line_no, &line[2..])?;
                let slot = if r == 'x' { &mut current.xs } else { &mut current.ys };
                if slot.is_some() {
                    return Err(SeedError::DuplicateRow {
                        line: line_no,
                        row: r,
                        name: current.name.clone(),
                    });
                }
                *slot = Some(values);
            }
            None => {
                let previous = std::mem::take(&mut current);
                if !previous.is_blank() {
                    blocks.push(previous.finish()?);
                }
                current.name = line.to_string();
            }
        }
    }
    if !current.is_blank() {
        blocks.push(current.finish()?);
    }
    if blocks.is_empty() {
        return Err(SeedError::Empty);
    }
    Ok(blocks)
}

/// Loads the first (usually only) seed block of a file.
pub fn load_seeds(text: &str) -> Result<SeedSet, SeedError> {
    parse_seed_blocks(text).map(|mut blocks| blocks.swap_remove(0))
}

/// Loads a multi-instance seed file keyed by lowercase instance name.
pub fn load_seed_table(text: &str) -> Result<BTreeMap<String, SeedSet>, SeedError> {
    Ok(parse_seed_blocks(text)?
        .into_iter()
        .map(|s| (s.instance_name.to_ascii_lowercase(), s))
        .collect())
}
