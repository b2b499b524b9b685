use super::{ClassState, Shape};
use crate::instance::Point;

/// Chain clustering result. `chains` and `isolated` together partition the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutcome {
    pub chains: Vec<ClassState>,
    pub isolated: Vec<usize>,
    /// Classes as grown, before neighbor merging.
    pub pre_merge: Vec<Vec<usize>>,
    /// Covariance trace of each pre-merge class in normalized coordinates.
    pub pre_merge_traces: Vec<f64>,
}

/// Running first and second moments of a point set.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    sx: f64,
    sy: f64,
    sxx: f64,
    syy: f64,
}

impl Moments {
    fn with(mut self, p: Point) -> Self {
        self.n += 1.0;
        self.sx += p.x;
        self.sy += p.y;
        self.sxx += p.x * p.x;
        self.syy += p.y * p.y;
        self
    }

    /// Trace of the population covariance matrix.
    fn trace(&self) -> f64 {
        if self.n == 0.0 {
            return 0.0;
        }
        let mx = self.sx / self.n;
        let my = self.sy / self.n;
        (self.sxx / self.n - mx * mx + self.syy / self.n - my * my).max(0.0)
    }
}

/// Population covariance trace of `pts`.
pub fn covariance_trace(pts: &[Point]) -> f64 {
    pts.iter().fold(Moments::default(), |m, &p| m.with(p)).trace()
}

/// Maps `ids` into the unit square with one scale factor for both axes.
fn normalize(points: &[Point], ids: &[usize]) -> Vec<Point> {
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &i in ids {
        min_x = min_x.min(points[i].x);
        min_y = min_y.min(points[i].y);
        max_x = max_x.max(points[i].x);
        max_y = max_y.max(points[i].y);
    }
    let span = (max_x - min_x).max(max_y - min_y);
    let scale = if span > 0.0 { span } else { 1.0 };
    ids.iter()
        .map(|&i| Point::new((points[i].x - min_x) / scale, (points[i].y - min_y) / scale))
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Chain-shaped clustering over `ids`.
///
/// Coordinates are scaled into the unit square. A class is seeded with the remaining point
/// farthest from the remaining centroid and grown by the remaining point nearest to any
/// member, for as long as the covariance trace stays within `trace_threshold`. Classes whose
/// closest members lie within `merge_factor` times the mean nearest-neighbor distance are
/// merged transitively. Merged classes of one point are reported as isolated.
pub fn chain_cluster(points: &[Point], ids: &[usize], trace_threshold: f64, merge_factor: f64) -> ChainOutcome {
    let n = ids.len();
    if n == 0 {
        return ChainOutcome {
            chains: Vec::new(),
            isolated: Vec::new(),
            pre_merge: Vec::new(),
            pre_merge_traces: Vec::new(),
        };
    }
    let norm = normalize(points, ids);

    let mut label = vec![usize::MAX; n];
    let mut remaining = n;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut traces = Vec::new();

    while remaining > 0 {
        let free: Vec<usize> = (0..n).filter(|&k| label[k] == usize::MAX).collect();
        let (cx, cy) = free
            .iter()
            .fold((0.0, 0.0), |(x, y), &k| (x + norm[k].x, y + norm[k].y));
        let c = Point::new(cx / free.len() as f64, cy / free.len() as f64);
        let seed = free
            .iter()
            .copied()
            .fold((free[0], -1.0), |(best, bd), k| {
                let d = norm[k].dist_sq(c);
                if d > bd {
                    (k, d)
                } else {
                    (best, bd)
                }
            })
            .0;

        let g = groups.len();
        label[seed] = g;
        remaining -= 1;
        let mut members = vec![seed];
        let mut moments = Moments::default().with(norm[seed]);
        let mut gap: Vec<f64> = (0..n).map(|k| norm[k].dist_sq(norm[seed])).collect();

        loop {
            let next = (0..n)
                .filter(|&k| label[k] == usize::MAX)
                .min_by(|&a, &b| gap[a].total_cmp(&gap[b]).then(a.cmp(&b)));
            let Some(k) = next else { break };
            let grown = moments.with(norm[k]);
            if grown.trace() > trace_threshold {
                break;
            }
            moments = grown;
            label[k] = g;
            remaining -= 1;
            members.push(k);
            for (j, slot) in gap.iter_mut().enumerate() {
                *slot = slot.min(norm[j].dist_sq(norm[k]));
            }
        }
        traces.push(moments.trace());
        groups.push(members);
    }

    // neighbor merge
    let mut parent: Vec<usize> = (0..groups.len()).collect();
    if n > 1 {
        let mean_nn = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a)
                    .map(|b| norm[a].dist(norm[b]))
                    .fold(f64::INFINITY, f64::min)
            })
            .sum::<f64>()
            / n as f64;
        let limit = merge_factor * mean_nn;
        for a in 0..n {
            for b in a + 1..n {
                if label[a] != label[b] && norm[a].dist(norm[b]) <= limit {
                    let ra = find(&mut parent, label[a]);
                    let rb = find(&mut parent, label[b]);
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }

    let mut merged: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for (g, members) in groups.iter().enumerate() {
        let root = find(&mut parent, g);
        merged[root].extend(members.iter().map(|&k| ids[k]));
    }
    let mut chains = Vec::new();
    let mut isolated = Vec::new();
    for m in merged.into_iter().filter(|m| !m.is_empty()) {
        if m.len() == 1 {
            isolated.push(m[0]);
        } else {
            chains.push(ClassState::from_members(points, m, Shape::Chain));
        }
    }
    isolated.sort_unstable();

    ChainOutcome {
        chains,
        isolated,
        pre_merge: groups
            .into_iter()
            .map(|g| {
                let mut v: Vec<usize> = g.into_iter().map(|k| ids[k]).collect();
                v.sort_unstable();
                v
            })
            .collect(),
        pre_merge_traces: traces,
    }
}
