use crate::instance::Point;

/// Sign of the turn `a -> b -> c`: 1 counterclockwise, -1 clockwise, 0 collinear.
fn orientation(a: Point, b: Point, c: Point) -> i8 {
    let v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Whether segments `a1a2` and `b1b2` properly cross.
///
/// Segments sharing an endpoint never count. Collinear segments count when they overlap in
/// more than a point. A segment merely touching the other at one point does not count.
pub fn segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
        return false;
    }
    let o1 = orientation(a1, a2, b1);
    let o2 = orientation(a1, a2, b2);
    let o3 = orientation(b1, b2, a1);
    let o4 = orientation(b1, b2, a2);
    if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
        // project onto the dominant axis of a
        let horizontal = (a2.x - a1.x).abs() >= (a2.y - a1.y).abs();
        let key = |p: Point| if horizontal { p.x } else { p.y };
        let (alo, ahi) = (key(a1).min(key(a2)), key(a1).max(key(a2)));
        let (blo, bhi) = (key(b1).min(key(b2)), key(b1).max(key(b2)));
        return alo.max(blo) < ahi.min(bhi);
    }
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Number of properly crossing pairs of tour edges.
pub fn count_crossings(order: &[usize], points: &[Point]) -> usize {
    let n = order.len();
    if n < 4 {
        return 0;
    }
    let edge = |k: usize| (points[order[k]], points[order[(k + 1) % n]]);
    let mut count = 0;
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a1, a2) = edge(i);
            let (b1, b2) = edge(j);
            if segments_intersect(a1, a2, b1, b2) {
                count += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq)]
pub struct UncrossOutcome {
    pub passes: usize,
    pub moves: usize,
    /// Crossings left when the pass cap stopped the repair.
    pub remaining: usize,
    pub capped: bool,
}

/// Removes crossing edge pairs by 2-opt segment reversal, with at most `max_passes` scans.
///
/// A crossing `(i, i+1) x (j, j+1)` is replaced by `(i, j) (i+1, j+1)` when that strictly
/// shortens the tour in exact Euclidean length. Collinear overlaps that cannot be improved
/// are left in place and reported.
pub fn remove_cross_edges(order: &mut [usize], points: &[Point], max_passes: usize) -> UncrossOutcome {
    let n = order.len();
    let mut outcome = UncrossOutcome {
        passes: 0,
        moves: 0,
        remaining: 0,
        capped: false,
    };
    if n < 4 {
        return outcome;
    }
    let d = |a: usize, b: usize| points[a].dist(points[b]);

    loop {
        if outcome.passes == max_passes {
            outcome.remaining = count_crossings(order, points);
            outcome.capped = outcome.remaining > 0;
            break;
        }
        outcome.passes += 1;
        let mut changed = false;
        for i in 0..n - 2 {
            let mut j = i + 2;
            while j < n {
                if i == 0 && j == n - 1 {
                    break;
                }
                let (a, b) = (order[i], order[i + 1]);
                let (c, e) = (order[j], order[(j + 1) % n]);
                if segments_intersect(points[a], points[b], points[c], points[e]) {
                    let delta = d(a, c) + d(b, e) - d(a, b) - d(c, e);
                    if delta < 0.0 {
                        order[i + 1..=j].reverse();
                        outcome.moves += 1;
                        changed = true;
                        // edge i changed; rescan it from the start
                        j = i + 2;
                        continue;
                    }
                }
                j += 1;
            }
        }
        if !changed {
            outcome.remaining = count_crossings(order, points);
            break;
        }
    }
    outcome
}
