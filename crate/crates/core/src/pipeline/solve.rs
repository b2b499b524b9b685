use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    build_centroid_graph, join_routes, order_classes, remove_cross_edges, select_bridges, solve_class, ClassRoute,
    PipelineError, UncrossOutcome,
};
use crate::aco::{build_windows, has_edge, little_window_size, run_aco, AcoParams, DistanceMatrix};
use crate::clustering::{kmeans, kmeans_plus_plus, resolve_m0, slc, slc_mixture, ClassState, ClusterConfig};
use crate::instance::{DistanceConvention, Instance, Point};
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Aco,
    AcoKmeans,
    AcoSlc,
    AcoSlcLwcr,
    AcoSlcMixture,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Aco,
        Algorithm::AcoKmeans,
        Algorithm::AcoSlc,
        Algorithm::AcoSlcLwcr,
        Algorithm::AcoSlcMixture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Aco => "ACO",
            Algorithm::AcoKmeans => "ACO_KMEANS",
            Algorithm::AcoSlc => "ACO_SLC",
            Algorithm::AcoSlcLwcr => "ACO_SLC_LWCR",
            Algorithm::AcoSlcMixture => "ACO_SLC_MIXTURE",
        }
    }

    /// False for the K-Means baseline.
    pub fn is_proposed(self) -> bool {
        self != Algorithm::AcoKmeans
    }

    fn windows_and_uncross(self) -> bool {
        matches!(self, Algorithm::AcoSlcLwcr | Algorithm::AcoSlcMixture)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected one of ACO, ACO_KMEANS, ACO_SLC, ACO_SLC_LWCR, ACO_SLC_MIXTURE)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Clustering,
    Ordering,
    ClassSolve,
    Stitching,
    Repair,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Clustering => "clustering",
            Phase::Ordering => "ordering",
            Phase::ClassSolve => "class-solve",
            Phase::Stitching => "stitching",
            Phase::Repair => "repair",
        })
    }
}

fn tagged<E: Into<PipelineError>>(phase: Phase) -> impl FnOnce(E) -> PipelineError {
    move |e| PipelineError::Phase {
        phase,
        source: Box::new(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub aco: AcoParams,
    pub cluster: ClusterConfig,
    /// Run seed; every stochastic stage derives its own stream from it.
    pub seed: u64,
    pub uncross_passes: usize,
    /// Also uncross each class route before joining (LWCR and Mixture only).
    pub uncross_per_class: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            aco: AcoParams::default(),
            cluster: ClusterConfig::default(),
            seed: 1,
            uncross_passes: 10,
            uncross_per_class: false,
        }
    }
}

/// Wall time per phase. Plain ACO books its whole run under `class_solve`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timing {
    pub clustering: Duration,
    pub ordering: Duration,
    pub class_solve: Duration,
    pub stitching: Duration,
    pub repair: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub algorithm: Algorithm,
    /// Cycle over instance city ids (0-based).
    pub order: Vec<usize>,
    /// Length under the instance's distance convention.
    pub length: f64,
    /// Length from the stitch accounting identity, before repair.
    pub stitched_length: Option<f64>,
    pub classes: usize,
    /// Final partition; empty for plain ACO.
    pub partition: Vec<ClassState>,
    pub timing: Timing,
    pub clustering_capped: bool,
    pub bridge_fallbacks: usize,
    pub uncross: Option<UncrossOutcome>,
}

/// Solves `instance` with `algorithm`. `seeds`, when given, fixes the initial centroids and
/// the class count of the clustering stage.
pub fn solve(
    instance: &Instance,
    algorithm: Algorithm,
    config: &SolveConfig,
    seeds: Option<&[Point]>,
) -> Result<Solution, PipelineError> {
    let start = Instant::now();
    let points = instance.points();
    let convention = instance.convention;
    let mut timing = Timing::default();

    if algorithm == Algorithm::Aco {
        let t = Instant::now();
        let dm = DistanceMatrix::from_points(points, convention);
        let params = AcoParams {
            rng_seed: derive_seed(config.seed, 0),
            ..config.aco.clone()
        };
        let out = run_aco(&dm, &params, None, None).map_err(tagged(Phase::ClassSolve))?;
        timing.class_solve = t.elapsed();
        timing.total = start.elapsed();
        return Ok(Solution {
            algorithm,
            length: out.tour.length,
            order: out.tour.order,
            stitched_length: None,
            classes: 1,
            partition: Vec::new(),
            timing,
            clustering_capped: false,
            bridge_fallbacks: 0,
            uncross: None,
        });
    }

    // Step 1: partition
    let t = Instant::now();
    let ids: Vec<usize> = (0..points.len()).collect();
    let cluster = ClusterConfig {
        rng_seed: derive_seed(config.seed, 1),
        ..config.cluster.clone()
    };
    let (partition, capped): (Vec<ClassState>, bool) = match algorithm {
        Algorithm::AcoKmeans => {
            cluster.validate().map_err(tagged(Phase::Clustering))?;
            let m0 = resolve_m0(ids.len(), seeds, &cluster).map_err(tagged(Phase::Clustering))?;
            let start_centroids = match seeds {
                Some(s) => s.to_vec(),
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cluster.rng_seed);
                    kmeans_plus_plus(points, &ids, m0, &mut rng).map_err(tagged(Phase::Clustering))?
                }
            };
            let out = kmeans(points, &ids, &start_centroids, cluster.sweep_cap).map_err(tagged(Phase::Clustering))?;
            (out, false)
        }
        Algorithm::AcoSlcMixture => {
            let out = slc_mixture(points, &ids, seeds, &cluster).map_err(tagged(Phase::Clustering))?;
            (out.classes, out.capped)
        }
        _ => {
            let out = slc(points, &ids, seeds, &cluster).map_err(tagged(Phase::Clustering))?;
            (out.classes, out.capped)
        }
    };
    let classes: Vec<Vec<usize>> = partition.iter().map(|c| c.members.clone()).collect();
    timing.clustering = t.elapsed();

    let lwcr = algorithm.windows_and_uncross();

    // Steps 2-3: centroid graph and class order
    let t = Instant::now();
    let graph = build_centroid_graph(points, &classes, convention);
    let order_params = AcoParams {
        rng_seed: derive_seed(config.seed, 2),
        ..config.aco.clone()
    };
    let order = order_classes(&graph, &order_params, lwcr).map_err(tagged(Phase::Ordering))?;
    timing.ordering = t.elapsed();

    // Step 4: bridges and border cities
    let t = Instant::now();
    let plan = select_bridges(points, &classes, &order, convention);
    timing.stitching += t.elapsed();

    // Step 5: local routes with pseudo-edges
    let t = Instant::now();
    let mut routes = Vec::with_capacity(classes.len());
    for (c, members) in classes.iter().enumerate() {
        let (entry, exit) = plan.borders[c];
        let params = AcoParams {
            rng_seed: derive_seed(config.seed, 100 + c as u64),
            ..config.aco.clone()
        };
        let mut route = if classes.len() == 1 {
            solve_whole(points, members, &params, lwcr, convention)
        } else {
            solve_class(points, members, entry, exit, &params, lwcr, convention)
        }
        .map_err(tagged(Phase::ClassSolve))?;
        if lwcr && config.uncross_per_class && route.order.len() >= 4 {
            route = uncross_class(route, points, entry, exit, config.uncross_passes, instance);
        }
        routes.push(route);
    }
    timing.class_solve = t.elapsed();

    // Step 6: join
    let t = Instant::now();
    let (mut tour, stitched) = if classes.len() == 1 {
        (routes[0].order.clone(), routes[0].length)
    } else {
        join_routes(&plan, &routes, points, convention).map_err(tagged(Phase::Stitching))?
    };
    timing.stitching += t.elapsed();

    let mut uncross = None;
    if lwcr {
        let t = Instant::now();
        uncross = Some(remove_cross_edges(&mut tour, points, config.uncross_passes));
        timing.repair = t.elapsed();
    }

    let length = crate::instance::cycle_length(&tour, points, convention);
    timing.total = start.elapsed();
    Ok(Solution {
        algorithm,
        order: tour,
        length,
        stitched_length: Some(stitched),
        classes: classes.len(),
        partition,
        timing,
        clustering_capped: capped,
        bridge_fallbacks: plan.fallbacks,
        uncross,
    })
}

/// A lone class has no bridges, so it is solved without a pseudo-edge.
fn solve_whole(
    points: &[Point],
    members: &[usize],
    params: &AcoParams,
    windows: bool,
    convention: DistanceConvention,
) -> Result<ClassRoute, PipelineError> {
    let local: Vec<Point> = members.iter().map(|&i| points[i]).collect();
    let dm = DistanceMatrix::from_points(&local, convention);
    let win = windows.then(|| build_windows(&dm, little_window_size(members.len())));
    let out = run_aco(&dm, params, win.as_ref(), None)?;
    Ok(ClassRoute {
        order: out.tour.order.iter().map(|&l| members[l]).collect(),
        length: out.tour.length,
    })
}

/// Uncrosses a class cycle; keeps the original when the repair drops the pseudo-edge.
fn uncross_class(
    route: ClassRoute,
    points: &[Point],
    entry: usize,
    exit: usize,
    passes: usize,
    instance: &Instance,
) -> ClassRoute {
    let mut order = route.order.clone();
    remove_cross_edges(&mut order, points, passes);
    if entry != exit && !has_edge(&order, entry, exit) {
        return route;
    }
    let length = crate::instance::cycle_length(&order, points, instance.convention);
    ClassRoute { order, length }
}
