#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aco_slc::aco::{
    deposit_and_evaporate, has_edge, is_permutation, run_aco, AcoParams, DistanceMatrix, PheromoneState, Tour,
};
use aco_slc::clustering::{
    compact_region, kmeans, kmeans_plus_plus, slc, slc_mixture, ClassState, ClusterConfig, Shape,
};
use aco_slc::instance::{cycle_length, DistanceConvention, Instance, Point};
use aco_slc::pipeline::{join_routes, select_bridges, solve, solve_class, Algorithm, SolveConfig};

pub type Check = Result<(), String>;

pub fn random_points(rng: &mut impl Rng, n: usize, span: f64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(rng.random_range(0.0..span), rng.random_range(0.0..span)))
        .collect()
}

/// Points around a few random centers, so clustering has structure to find.
pub fn clustered_points(rng: &mut impl Rng, n: usize, blobs: usize) -> Vec<Point> {
    let centers = random_points(rng, blobs.max(1), 1000.0);
    (0..n)
        .map(|i| {
            let c = centers[i % centers.len()];
            Point::new(c.x + rng.random_range(-60.0..60.0), c.y + rng.random_range(-60.0..60.0))
        })
        .collect()
}

pub fn quick_params(seed: u64) -> AcoParams {
    AcoParams {
        t_max: 25,
        rng_seed: seed,
        ..AcoParams::default()
    }
}

fn sorted_ids(classes: &[Vec<usize>]) -> Vec<usize> {
    let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
    all.sort_unstable();
    all
}

/// Every algorithm returns a permutation whose reported length is its cycle length.
pub fn check_tour_permutation(points: &[Point], algorithm: Algorithm, seed: u64) -> Check {
    let instance = Instance::new("prop", points.to_vec(), DistanceConvention::Rounded).map_err(|e| e.to_string())?;
    let config = SolveConfig {
        aco: quick_params(seed),
        seed,
        ..SolveConfig::default()
    };
    let sol = solve(&instance, algorithm, &config, None).map_err(|e| format!("{algorithm}: {e}"))?;
    if !is_permutation(&sol.order, points.len()) {
        return Err(format!("{algorithm}: not a permutation: {:?}", sol.order));
    }
    let expect = cycle_length(&sol.order, points, DistanceConvention::Rounded);
    if sol.length != expect {
        return Err(format!("{algorithm}: length {} but cycle is {expect}", sol.length));
    }
    Ok(())
}

fn check_partition(name: &str, classes: &[ClassState], n: usize) -> Check {
    if classes.iter().any(|c| c.members.is_empty()) {
        return Err(format!("{name}: empty class"));
    }
    let members: Vec<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
    if sorted_ids(&members) != (0..n).collect::<Vec<_>>() {
        return Err(format!("{name}: not a partition of 0..{n}"));
    }
    Ok(())
}

/// SLC, SLC-Mixture and K-Means each cover every city exactly once with nonempty classes.
pub fn check_partition_complete(points: &[Point], seed: u64, m0: Option<usize>) -> Check {
    let n = points.len();
    let ids: Vec<usize> = (0..n).collect();
    let config = ClusterConfig {
        m0,
        rng_seed: seed,
        ..ClusterConfig::default()
    };
    let out = slc(points, &ids, None, &config).map_err(|e| format!("slc: {e}"))?;
    check_partition("slc", &out.classes, n)?;
    let mix = slc_mixture(points, &ids, None, &config).map_err(|e| format!("mixture: {e}"))?;
    check_partition("mixture", &mix.classes, n)?;
    if mix.classes.iter().any(|c| c.shape == Shape::Isolated && c.len() != 1) {
        return Err("mixture: isolated class with several members".into());
    }
    let k = m0.unwrap_or(2).clamp(1, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = kmeans_plus_plus(points, &ids, k, &mut rng).map_err(|e| format!("kmeans++: {e}"))?;
    let km = kmeans(points, &ids, &start, 500).map_err(|e| format!("kmeans: {e}"))?;
    check_partition("kmeans", &km, n)
}

/// The central region shrinks as `p` grows, and each split covers the class.
pub fn check_compact_monotone(points: &[Point], max_p: u32) -> Check {
    let class = ClassState::from_members(points, (0..points.len()).collect(), Shape::Unknown);
    let mut prev: Option<BTreeSet<usize>> = None;
    for p in 0..=max_p {
        let (kept, spill) = compact_region(points, &class, p);
        let mut all: Vec<usize> = kept.iter().chain(&spill).copied().collect();
        all.sort_unstable();
        if all != class.members {
            return Err(format!("p={p}: kept and spill do not cover the class"));
        }
        let kept: BTreeSet<usize> = kept.into_iter().collect();
        if let Some(prev) = &prev {
            if !kept.is_subset(prev) {
                return Err(format!("p={p}: region grew"));
            }
        }
        prev = Some(kept);
    }
    Ok(())
}

/// Random tours deposited over several updates keep the trail matrix symmetric and positive.
pub fn check_pheromone(n: usize, rho: f64, q: f64, updates: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = random_points(&mut rng, n, 100.0);
    let dm = DistanceMatrix::from_points(&pts, DistanceConvention::Exact);
    let params = AcoParams {
        rho,
        q,
        ..AcoParams::default()
    };
    let mut state = PheromoneState::new(n, params.tau0);
    for _ in 0..updates {
        let ants = rng.random_range(0..4);
        let tours: Vec<Tour> = (0..ants)
            .map(|_| {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                Tour::new(order, &dm)
            })
            .collect();
        deposit_and_evaporate(&mut state, &tours, &params);
        if !state.is_symmetric_positive() {
            return Err(format!("asymmetric or non-positive trail after {} updates", state.iteration));
        }
    }
    Ok(())
}

/// A forced edge is always part of the returned tour.
pub fn check_forced_edge(points: &[Point], u: usize, v: usize, windows: bool, seed: u64) -> Check {
    let dm = DistanceMatrix::from_points(points, DistanceConvention::Rounded);
    let win = windows.then(|| aco_slc::aco::build_windows(&dm, aco_slc::aco::little_window_size(points.len())));
    let out = run_aco(&dm, &quick_params(seed), win.as_ref(), Some((u, v))).map_err(|e| e.to_string())?;
    if !is_permutation(&out.tour.order, points.len()) {
        return Err("not a permutation".into());
    }
    if !has_edge(&out.tour.order, u, v) {
        return Err(format!("edge ({u},{v}) missing from {:?}", out.tour.order));
    }
    Ok(())
}

/// Splits `0..n` into `k` nonempty classes at random.
pub fn random_partition(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Vec<usize>> {
    let k = k.clamp(1, n);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut classes: Vec<Vec<usize>> = ids[..k].iter().map(|&i| vec![i]).collect();
    for &i in &ids[k..] {
        let c = rng.random_range(0..k);
        classes[c].push(i);
    }
    classes
}

/// The joined length equals local lengths minus pseudo-edges plus bridges, and that is the
/// length of the joined cycle. Needs at least two classes.
pub fn check_stitch_identity(points: &[Point], classes: &[Vec<usize>], windows: bool, seed: u64) -> Check {
    let conv = DistanceConvention::Rounded;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.shuffle(&mut rng);
    let plan = select_bridges(points, classes, &order, conv);
    let mut routes = Vec::with_capacity(classes.len());
    for (c, members) in classes.iter().enumerate() {
        let (u, v) = plan.borders[c];
        routes.push(solve_class(points, members, u, v, &quick_params(seed + c as u64), windows, conv).map_err(|e| e.to_string())?);
    }
    let (tour, accounted) = join_routes(&plan, &routes, points, conv).map_err(|e| e.to_string())?;
    if !is_permutation(&tour, points.len()) {
        return Err("joined tour is not a permutation".into());
    }
    let actual = cycle_length(&tour, points, conv);
    if (accounted - actual).abs() > 1e-6 * actual.max(1.0) {
        return Err(format!("accounting {accounted} vs cycle {actual}"));
    }
    let by_parts: f64 = routes.iter().map(|r| r.length).sum::<f64>()
        - plan
            .borders
            .iter()
            .map(|&(u, v)| aco_slc::instance::point_distance(points[u], points[v], conv))
            .sum::<f64>()
        + plan.bridges.iter().map(|b| b.length).sum::<f64>();
    if classes.len() > 1 && (by_parts - actual).abs() > 1e-6 * actual.max(1.0) {
        return Err(format!("sum of parts {by_parts} vs cycle {actual}"));
    }
    Ok(())
}
