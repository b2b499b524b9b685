use log::warn;

use super::PipelineError;
use crate::aco::{build_windows, little_window_size, run_aco, AcoParams, DistanceMatrix};
use crate::instance::{point_distance, DistanceConvention, Point};

/// Smallest cross-pair distance between two classes.
pub fn interclass_min_distance(points: &[Point], a: &[usize], b: &[usize], convention: DistanceConvention) -> f64 {
    let mut best = f64::INFINITY;
    for &i in a {
        for &j in b {
            best = best.min(point_distance(points[i], points[j], convention));
        }
    }
    best
}

/// Classes as virtual cities at their centroids, weighted by minimum inter-class distance.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidGraph {
    pub centroids: Vec<Point>,
    pub weights: DistanceMatrix,
}

impl CentroidGraph {
    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }
}

pub fn build_centroid_graph(points: &[Point], classes: &[Vec<usize>], convention: DistanceConvention) -> CentroidGraph {
    let k = classes.len();
    let centroids = classes
        .iter()
        .map(|c| {
            let (sx, sy) = c.iter().fold((0.0, 0.0), |(x, y), &i| (x + points[i].x, y + points[i].y));
            let n = c.len().max(1) as f64;
            Point::new(sx / n, sy / n)
        })
        .collect();
    let mut w = vec![0.0; k * k];
    for i in 0..k {
        for j in i + 1..k {
            w[i * k + j] = interclass_min_distance(points, &classes[i], &classes[j], convention);
        }
    }
    let weights = DistanceMatrix::from_weights(k, w).expect("square by construction");
    CentroidGraph { centroids, weights }
}

/// Visiting order of the classes: the colony's tour over the centroid graph.
pub fn order_classes(graph: &CentroidGraph, params: &AcoParams, windows: bool) -> Result<Vec<usize>, PipelineError> {
    let k = graph.len();
    if k <= 2 {
        return Ok((0..k).collect());
    }
    let win = windows.then(|| build_windows(&graph.weights, little_window_size(k)));
    let out = run_aco(&graph.weights, params, win.as_ref(), None)?;
    Ok(out.tour.order)
}

/// Edge from the exit city of one class to the entry city of the next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bridge {
    pub from_class: usize,
    pub to_class: usize,
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

/// Class order, bridges, and each class's border pair.
#[derive(Debug, Clone, PartialEq)]
pub struct StitchPlan {
    pub class_order: Vec<usize>,
    /// `bridges[k]` leaves `class_order[k]` for `class_order[k + 1]` (cyclically).
    pub bridges: Vec<Bridge>,
    /// Per class index: (entry city, exit city). Equal for singleton classes.
    pub borders: Vec<(usize, usize)>,
    /// Bridges that had to reuse an already taken border city.
    pub fallbacks: usize,
}

/// Picks bridges greedily along `order`, each the shortest cross pair (ties by lower ids)
/// among cities not yet used as a border of a class with at least two members.
pub fn select_bridges(
    points: &[Point],
    classes: &[Vec<usize>],
    order: &[usize],
    convention: DistanceConvention,
) -> StitchPlan {
    let k = order.len();
    let mut borders: Vec<(Option<usize>, Option<usize>)> = vec![(None, None); classes.len()];
    let mut bridges = Vec::new();
    let mut fallbacks = 0;
    if k >= 2 {
        for step in 0..k {
            let a = order[step];
            let b = order[(step + 1) % k];
            let taken = |class: usize, slot: &(Option<usize>, Option<usize>), city: usize| {
                classes[class].len() >= 2 && (slot.0 == Some(city) || slot.1 == Some(city))
            };
            let pick = |allow_reuse: bool| {
                let mut best: Option<(f64, usize, usize)> = None;
                for &u in &classes[a] {
                    if !allow_reuse && taken(a, &borders[a], u) {
                        continue;
                    }
                    for &v in &classes[b] {
                        if !allow_reuse && taken(b, &borders[b], v) {
                            continue;
                        }
                        let d = point_distance(points[u], points[v], convention);
                        let better = match best {
                            None => true,
                            Some((bd, bu, bv)) => d < bd || (d == bd && (u, v) < (bu, bv)),
                        };
                        if better {
                            best = Some((d, u, v));
                        }
                    }
                }
                best
            };
            let (d, u, v) = match pick(false) {
                Some(found) => found,
                None => {
                    warn!("no free border city between classes {a} and {b}; reusing one");
                    fallbacks += 1;
                    pick(true).expect("classes are nonempty")
                }
            };
            borders[a].1 = Some(u);
            borders[b].0 = Some(v);
            bridges.push(Bridge {
                from_class: a,
                to_class: b,
                u,
                v,
                length: d,
            });
        }
    }
    let borders = borders
        .into_iter()
        .enumerate()
        .map(|(c, (entry, exit))| {
            let first = classes[c][0];
            (entry.unwrap_or(first), exit.unwrap_or(first))
        })
        .collect();
    StitchPlan {
        class_order: order.to_vec(),
        bridges,
        borders,
        fallbacks,
    }
}

/// A solved class: a cycle over global city ids containing its pseudo-edge.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassRoute {
    pub order: Vec<usize>,
    /// Cycle length including the pseudo-edge at its real distance.
    pub length: f64,
}

/// Solves one class with the pseudo-edge `(u, v)` forced into the route.
pub fn solve_class(
    points: &[Point],
    members: &[usize],
    u: usize,
    v: usize,
    params: &AcoParams,
    windows: bool,
    convention: DistanceConvention,
) -> Result<ClassRoute, PipelineError> {
    let lu = members.iter().position(|&c| c == u).ok_or(PipelineError::BorderNotInClass(u))?;
    let lv = members.iter().position(|&c| c == v).ok_or(PipelineError::BorderNotInClass(v))?;
    if members.len() > 1 && lu == lv {
        return Err(PipelineError::SameBorder(u));
    }
    let local: Vec<Point> = members.iter().map(|&i| points[i]).collect();
    let dm = DistanceMatrix::from_points(&local, convention);
    if members.len() <= 2 {
        let order = if members.len() == 2 { vec![u, v] } else { vec![u] };
        let length = crate::aco::tour_length(&(0..members.len()).collect::<Vec<_>>(), &dm);
        return Ok(ClassRoute { order, length });
    }
    let win = windows.then(|| build_windows(&dm, little_window_size(members.len())));
    let out = run_aco(&dm, params, win.as_ref(), Some((lu, lv)))?;
    Ok(ClassRoute {
        order: out.tour.order.iter().map(|&l| members[l]).collect(),
        length: out.tour.length,
    })
}

/// Opens a class cycle at its pseudo-edge into a path from `entry` to `exit`.
fn open_path(route: &[usize], entry: usize, exit: usize) -> Result<Vec<usize>, PipelineError> {
    if route.len() == 1 {
        return Ok(route.to_vec());
    }
    if !crate::aco::has_edge(route, entry, exit) {
        return Err(PipelineError::MissingPseudoEdge(entry, exit));
    }
    let pos = route.iter().position(|&c| c == entry).expect("entry on route");
    let mut path = route.to_vec();
    path.rotate_left(pos);
    if *path.last().expect("nonempty") != exit {
        path[1..].reverse();
    }
    Ok(path)
}

/// Joins solved classes along the plan into one cycle over global ids. Returns the order and
/// its length from the accounting identity: local lengths minus pseudo-edges plus bridges.
pub fn join_routes(
    plan: &StitchPlan,
    routes: &[ClassRoute],
    points: &[Point],
    convention: DistanceConvention,
) -> Result<(Vec<usize>, f64), PipelineError> {
    if plan.class_order.len() == 1 {
        let r = &routes[plan.class_order[0]];
        return Ok((r.order.clone(), r.length));
    }
    let mut order = Vec::new();
    let mut length = 0.0;
    for &c in &plan.class_order {
        let (entry, exit) = plan.borders[c];
        order.extend(open_path(&routes[c].order, entry, exit)?);
        length += routes[c].length - point_distance(points[entry], points[exit], convention);
    }
    length += plan.bridges.iter().map(|b| b.length).sum::<f64>();
    Ok((order, length))
}
