//! TSPLIB ingestion and the distance conventions shared by every solver stage.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A point in the plane, in instance units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[inline]
    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// A city of an instance. `id` is the 0-based position inside its instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct City {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

impl City {
    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// How Euclidean lengths are turned into edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DistanceConvention {
    /// TSPLIB `EUC_2D`: nearest-integer rounding of the Euclidean length.
    #[default]
    Rounded,
    /// Plain Euclidean length.
    Exact,
}

impl DistanceConvention {
    pub fn name(self) -> &'static str {
        match self {
            DistanceConvention::Rounded => "EUC_2D_ROUNDED",
            DistanceConvention::Exact => "EUC_2D_EXACT",
        }
    }
}

impl fmt::Display for DistanceConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rounded" | "euc_2d_rounded" | "euc_2d" => Ok(DistanceConvention::Rounded),
            "exact" | "euc_2d_exact" => Ok(DistanceConvention::Exact),
            other => Err(format!("unknown distance convention `{other}` (expected rounded|exact)")),
        }
    }
}

/// Edge weight between two points under `convention`.
#[inline]
pub fn point_distance(a: Point, b: Point, convention: DistanceConvention) -> f64 {
    let d = a.dist(b);
    match convention {
        DistanceConvention::Exact => d,
        // TSPLIB nint(): (int)(d + 0.5)
        DistanceConvention::Rounded => (d + 0.5).floor(),
    }
}

/// Edge weight between two cities under `convention`.
pub fn distance(a: &City, b: &City, convention: DistanceConvention) -> f64 {
    point_distance(a.point(), b.point(), convention)
}

/// Closed-cycle length of `order` over `points`. Fewer than two cities give 0.
pub fn cycle_length(order: &[usize], points: &[Point], convention: DistanceConvention) -> f64 {
    if order.len() < 2 {
        return 0.0;
    }
    (0..order.len())
        .map(|k| point_distance(points[order[k]], points[order[(k + 1) % order.len()]], convention))
        .sum()
}

/// Borrowed view of city coordinates together with the active convention.
#[derive(Debug, Clone, Copy)]
pub struct Metric<'a> {
    pub points: &'a [Point],
    pub convention: DistanceConvention,
}

impl<'a> Metric<'a> {
    pub fn new(points: &'a [Point], convention: DistanceConvention) -> Self {
        Self { points, convention }
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        point_distance(self.points[i], self.points[j], self.convention)
    }

    #[inline]
    pub fn exact(&self, i: usize, j: usize) -> f64 {
        self.points[i].dist(self.points[j])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("an instance needs at least 3 cities, got {0}")]
    TooFewCities(usize),
}

/// A named set of planar cities with a distance convention.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub comment: Option<String>,
    cities: Vec<City>,
    points: Vec<Point>,
    pub convention: DistanceConvention,
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        points: Vec<Point>,
        convention: DistanceConvention,
    ) -> Result<Self, InstanceError> {
        if points.len() < 3 {
            return Err(InstanceError::TooFewCities(points.len()));
        }
        let cities = points
            .iter()
            .enumerate()
            .map(|(id, p)| City { id, x: p.x, y: p.y })
            .collect();
        Ok(Self {
            name: name.into(),
            comment: None,
            cities,
            points,
            convention,
        })
    }

    pub fn cities(&self) -> &[City] {
        &self.cities
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.cities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cities.is_empty()
    }

    pub fn metric(&self) -> Metric<'_> {
        Metric::new(&self.points, self.convention)
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        point_distance(self.points[i], self.points[j], self.convention)
    }

    pub fn with_convention(mut self, convention: DistanceConvention) -> Self {
        self.convention = convention;
        self
    }
}

/// Errors from [`parse_tsplib`]; every variant carries the 1-based line it refers to.
#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: malformed header entry `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: unsupported problem TYPE `{value}` (only TSP)")]
    UnsupportedType { line: usize, value: String },
    #[error("line {line}: unsupported EDGE_WEIGHT_TYPE `{value}` (only EUC_2D)")]
    UnsupportedEdgeWeightType { line: usize, value: String },
    #[error("line {line}: missing NODE_COORD_SECTION")]
    MissingCoordSection { line: usize },
    #[error("line {line}: missing DIMENSION before NODE_COORD_SECTION")]
    MissingDimension { line: usize },
    #[error("line {line}: missing EDGE_WEIGHT_TYPE before NODE_COORD_SECTION")]
    MissingEdgeWeightType { line: usize },
    #[error("line {line}: malformed coordinate entry `{text}`")]
    MalformedCoord { line: usize, text: String },
    #[error("line {line}: duplicate node id {id}")]
    DuplicateNode { line: usize, id: usize },
    #[error("line {line}: DIMENSION is {expected} but {found} coordinate lines were read")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    Instance { line: usize, source: InstanceError },
}

/// Parses the EUC_2D subset of TSPLIB. Node ids are mapped to 0-based positions in file order.
pub fn parse_tsplib(text: &str) -> Result<Instance, ParseError> {
    let mut name = String::new();
    let mut comment: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut edge_weight_seen = false;

    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut last_line = 0;
    let mut in_coords = false;

    for (no, line) in lines.by_ref() {
        last_line = no;
        if line.is_empty() {
            continue;
        }
        if line.starts_with("NODE_COORD_SECTION") {
            in_coords = true;
            break;
        }
        if line == "EOF" {
            break;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => {
                return Err(ParseError::MalformedHeader {
                    line: no,
                    text: line.to_string(),
                })
            }
        };
        match key {
            "NAME" => name = value.to_string(),
            "COMMENT" => {
                comment = Some(match comment.take() {
                    Some(prev) => format!("{prev} {value}"),
                    None => value.to_string(),
                })
            }
            "TYPE" => {
                if value != "TSP" {
                    return Err(ParseError::UnsupportedType {
                        line: no,
                        value: value.to_string(),
                    });
                }
            }
            "DIMENSION" => {
                dimension = Some(value.parse().map_err(|_| ParseError::MalformedHeader {
                    line: no,
                    text: line.to_string(),
                })?)
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EUC_2D" {
                    return Err(ParseError::UnsupportedEdgeWeightType {
                        line: no,
                        value: value.to_string(),
                    });
                }
                edge_weight_seen = true;
            }
            // informational keys some EUC_2D files carry
            "DISPLAY_DATA_TYPE" | "NODE_COORD_TYPE" => {}
            _ => {
                return Err(ParseError::MalformedHeader {
                    line: no,
                    text: line.to_string(),
                })
            }
        }
    }

    if !in_coords {
        return Err(ParseError::MissingCoordSection { line: last_line });
    }
    let dimension = dimension.ok_or(ParseError::MissingDimension { line: last_line })?;
    if !edge_weight_seen {
        return Err(ParseError::MissingEdgeWeightType { line: last_line });
    }

    let mut points = Vec::with_capacity(dimension);
    let mut seen_ids = std::collections::HashSet::with_capacity(dimension);
    for (no, line) in lines {
        last_line = no;
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        let mut fields = line.split_whitespace();
        let malformed = || ParseError::MalformedCoord {
            line: no,
            text: line.to_string(),
        };
        let id: usize = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
        let x: f64 = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
        let y: f64 = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
        if fields.next().is_some() {
            return Err(malformed());
        }
        if !seen_ids.insert(id) {
            return Err(ParseError::DuplicateNode { line: no, id });
        }
        points.push(Point::new(x, y));
    }

    if points.len() != dimension {
        return Err(ParseError::DimensionMismatch {
            line: last_line,
            expected: dimension,
            found: points.len(),
        });
    }

    let mut instance = Instance::new(name, points, DistanceConvention::Rounded)
        .map_err(|source| ParseError::Instance {
            line: last_line,
            source,
        })?;
    instance.comment = comment;
    Ok(instance)
}

/// Writes the instance back as a TSPLIB file. Coordinates use Rust's shortest
/// round-trip float formatting, so parsing the output reproduces them bit-exactly.
pub fn write_tsplib(instance: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!("NAME : {}\n", instance.name));
    if let Some(c) = &instance.comment {
        out.push_str(&format!("COMMENT : {c}\n"));
    }
    out.push_str("TYPE : TSP\n");
    out.push_str(&format!("DIMENSION : {}\n", instance.len()));
    out.push_str("EDGE_WEIGHT_TYPE : EUC_2D\n");
    out.push_str(&write_node_coords(instance.cities()));
    out.push_str("EOF\n");
    out
}

pub fn write_node_coords(cities: &[City]) -> String {
    let mut out = String::from("NODE_COORD_SECTION\n");
    for c in cities {
        out.push_str(&format!("{} {} {}\n", c.id + 1, c.x, c.y));
    }
    out
}
