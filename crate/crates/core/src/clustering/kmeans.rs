use rand::Rng;

use super::{centroid_of, ClassState, ClusterError};
use crate::instance::Point;

/// `max(2, round(sqrt(n)))`, used when no seed file fixes the class count.
pub fn default_m0(n: usize) -> usize {
    ((n as f64).sqrt().round() as usize).max(2)
}

/// Index of the closest centroid; ties go to the lowest index.
pub fn nearest_centroid(p: Point, centroids: &[Point]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (k, c) in centroids.iter().enumerate() {
        let d = p.dist_sq(*c);
        if d < best_d {
            best_d = d;
            best = k;
        }
    }
    best
}

/// One K-Means sweep over `ids`: assign each point to its nearest centroid, then move
/// every nonempty class to the mean of its members. Empty classes keep their centroid.
/// Entropy history, stability and shape are carried over from `classes`.
pub fn assign_and_update(points: &[Point], ids: &[usize], classes: &[ClassState]) -> Vec<ClassState> {
    let centroids: Vec<Point> = classes.iter().map(|c| c.centroid).collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    if !centroids.is_empty() {
        for &i in ids {
            members[nearest_centroid(points[i], &centroids)].push(i);
        }
    }
    classes
        .iter()
        .zip(members)
        .map(|(old, mut m)| {
            m.sort_unstable();
            let mut next = ClassState {
                centroid: centroid_of(points, &m).unwrap_or(old.centroid),
                members: m,
                distortion: 0.0,
                deviation: 0.0,
                entropy: old.entropy.clone(),
                stable: old.stable,
                shape: old.shape,
            };
            next.refresh_stats(points);
            next
        })
        .collect()
}

/// k-means++ seeding over `ids`. Returns `k` centroids taken from the input points.
pub fn kmeans_plus_plus<R: Rng + ?Sized>(
    points: &[Point],
    ids: &[usize],
    k: usize,
    rng: &mut R,
) -> Result<Vec<Point>, ClusterError> {
    if k == 0 {
        return Err(ClusterError::NoClasses);
    }
    if k > ids.len() {
        return Err(ClusterError::TooManyClasses {
            classes: k,
            points: ids.len(),
        });
    }
    let mut chosen = vec![points[ids[rng.random_range(0..ids.len())]]];
    let mut d2: Vec<f64> = ids.iter().map(|&i| points[i].dist_sq(chosen[0])).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut idx = d2.len() - 1;
            for (j, &w) in d2.iter().enumerate() {
                if target < w {
                    idx = j;
                    break;
                }
                target -= w;
            }
            idx
        } else {
            // all remaining points coincide with a chosen centroid
            rng.random_range(0..ids.len())
        };
        let c = points[ids[pick]];
        chosen.push(c);
        for (slot, &i) in d2.iter_mut().zip(ids) {
            *slot = slot.min(points[i].dist_sq(c));
        }
    }
    Ok(chosen)
}

/// Plain Lloyd iterations from `seeds` until membership stops changing or `max_iter` sweeps.
/// Empty classes are dropped from the result, which therefore partitions `ids`.
pub fn kmeans(
    points: &[Point],
    ids: &[usize],
    seeds: &[Point],
    max_iter: usize,
) -> Result<Vec<ClassState>, ClusterError> {
    if seeds.is_empty() {
        return Err(ClusterError::NoClasses);
    }
    let mut classes: Vec<ClassState> = seeds.iter().map(|&c| ClassState::seeded(c)).collect();
    for _ in 0..max_iter.max(1) {
        let next = assign_and_update(points, ids, &classes);
        let settled = next.iter().zip(&classes).all(|(a, b)| a.members == b.members);
        classes = next;
        if settled {
            break;
        }
    }
    classes.retain(|c| !c.is_empty());
    Ok(classes)
}
