//! Special local clustering: K-Means sweeps with entropy-based stability,
//! compact-region extraction, shape markers and chain clustering.

mod chain;
mod dump;
mod kmeans;
mod local;
mod mixture;
mod shape;
mod stats;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::instance::Point;

pub use chain::{chain_cluster, covariance_trace, ChainOutcome};
pub use dump::{dump_partition, parse_partition_dump, DumpError};
pub use kmeans::{assign_and_update, default_m0, kmeans, kmeans_plus_plus, nearest_centroid};
pub use local::{local_cluster_3delta, resolve_m0, slc, LocalClusterOutcome, SlcOutcome};
pub use mixture::{slc_mixture, MixtureOutcome};
pub use shape::{is_spherical, sector_of, sector_percentages};
pub use stats::{
    centroid_of, compact_region, deviation, distortion, entropy_converged, entropy_estimate,
};

/// Shape label attached to a class once the mixture pass has looked at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Shape {
    #[default]
    Unknown,
    Spherical,
    Chain,
    Isolated,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Unknown => "UNKNOWN",
            Shape::Spherical => "SPHERICAL",
            Shape::Chain => "CHAIN",
            Shape::Isolated => "ISOLATED",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "UNKNOWN" => Ok(Shape::Unknown),
            "SPHERICAL" => Ok(Shape::Spherical),
            "CHAIN" => Ok(Shape::Chain),
            "ISOLATED" => Ok(Shape::Isolated),
            other => Err(format!("unknown shape `{other}`")),
        }
    }
}

/// One cluster. `members` are global city ids in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassState {
    pub members: Vec<usize>,
    pub centroid: Point,
    pub distortion: f64,
    pub deviation: f64,
    /// Entropy estimate after each sweep, oldest first.
    pub entropy: Vec<f64>,
    pub stable: bool,
    pub shape: Shape,
}

impl ClassState {
    /// An empty class sitting at `centroid`, as created from an initial seed.
    pub fn seeded(centroid: Point) -> Self {
        Self {
            members: Vec::new(),
            centroid,
            distortion: 0.0,
            deviation: 0.0,
            entropy: Vec::new(),
            stable: false,
            shape: Shape::Unknown,
        }
    }

    /// A class over `members` with centroid and spread statistics filled in.
    pub fn from_members(points: &[Point], mut members: Vec<usize>, shape: Shape) -> Self {
        members.sort_unstable();
        let centroid = centroid_of(points, &members).unwrap_or_default();
        let mut class = Self {
            members,
            centroid,
            distortion: 0.0,
            deviation: 0.0,
            entropy: Vec::new(),
            stable: false,
            shape,
        };
        class.refresh_stats(points);
        class
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Recomputes distortion and deviation around the current centroid. No-op on an empty class.
    pub fn refresh_stats(&mut self, points: &[Point]) {
        if let (Ok(d), Ok(dev)) = (distortion(points, self), deviation(points, self)) {
            self.distortion = d;
            self.deviation = dev;
        }
    }
}

/// Tuning knobs for the clustering stage.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterConfig {
    /// Initial class count; `None` picks [`default_m0`] or the seed-file count.
    pub m0: Option<usize>,
    /// Relative entropy-change threshold for marking a class stable.
    pub epsilon: f64,
    /// Minimum sector share for a class to count as spherical.
    pub sector_floor: f64,
    /// Covariance-trace cap for chain growth, in normalized coordinates.
    pub trace_threshold: f64,
    /// Chain classes merge when closer than this multiple of the residual mean nearest-neighbor distance.
    pub merge_factor: f64,
    /// Assign/update sweeps per local clustering call before remaining classes are forced stable.
    pub sweep_cap: usize,
    pub rng_seed: u64,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            m0: None,
            epsilon: 0.001,
            sector_floor: 0.058,
            trace_threshold: 0.0005,
            merge_factor: 2.0,
            sweep_cap: 500,
            rng_seed: 1,
        }
    }
}

impl ClusterConfig {
    pub fn validate(&self) -> Result<(), ClusterError> {
        let bad = |field: &'static str, value: f64| ClusterError::InvalidConfig { field, value };
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(bad("epsilon", self.epsilon));
        }
        if !(self.sector_floor > 0.0 && self.sector_floor <= 0.125) {
            return Err(bad("sector_floor", self.sector_floor));
        }
        if !(self.trace_threshold > 0.0) {
            return Err(bad("trace_threshold", self.trace_threshold));
        }
        if !(self.merge_factor >= 0.0) {
            return Err(bad("merge_factor", self.merge_factor));
        }
        if self.sweep_cap == 0 {
            return Err(bad("sweep_cap", 0.0));
        }
        if self.m0 == Some(0) {
            return Err(bad("m0", 0.0));
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ClusterError {
    #[error("class has no members")]
    EmptyClass,
    #[error("need at least one class")]
    NoClasses,
    #[error("{classes} classes requested for only {points} points")]
    TooManyClasses { classes: usize, points: usize },
    #[error("{given} seed centroids given for {classes} classes")]
    SeedCountMismatch { given: usize, classes: usize },
    #[error("sector marker needs at least 8 members, class has {0}")]
    TooFewForSectors(usize),
    #[error("invalid clustering parameter {field} = {value}")]
    InvalidConfig { field: &'static str, value: f64 },
}
