//! Cluster-first, route-second assembly: order the classes, bridge them, solve each class
//! with a forced pseudo-edge, join the routes and optionally uncross the result.

mod solve;
mod stitch;
mod uncross;

use thiserror::Error;

use crate::aco::AcoError;
use crate::clustering::ClusterError;

pub use solve::{solve, Algorithm, Phase, SolveConfig, Solution, Timing};
pub use stitch::{
    build_centroid_graph, interclass_min_distance, join_routes, order_classes, select_bridges, solve_class, Bridge,
    CentroidGraph, ClassRoute, StitchPlan,
};
pub use uncross::{count_crossings, remove_cross_edges, segments_intersect, UncrossOutcome};

#[derive(Debug, Error, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Aco(#[from] AcoError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("border city {0} is not a member of its class")]
    BorderNotInClass(usize),
    #[error("class with several cities got the same border city {0} twice")]
    SameBorder(usize),
    #[error("local route lacks its pseudo-edge ({0}, {1})")]
    MissingPseudoEdge(usize, usize),
    #[error("{phase} phase: {source}")]
    Phase {
        phase: Phase,
        #[source]
        source: Box<PipelineError>,
    },
}
