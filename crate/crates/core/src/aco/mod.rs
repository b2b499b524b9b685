//! Ant System with the route-length convergence stop, little-window candidate lists and
//! forced-edge support for local class solves.

mod colony;
mod windows;

use thiserror::Error;

use crate::instance::{point_distance, DistanceConvention, Point};

pub use colony::{
    construct_tour, deposit_and_evaporate, run_aco, AcoOutcome, Heuristic, PheromoneState, TAU_FLOOR,
};
pub use windows::{build_windows, little_window_size, WindowSets};

/// Number of ants per iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AntCount {
    /// `floor(N / 1.5)`, at least 1.
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcoParams {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub q: f64,
    pub t_max: usize,
    /// Stop once consecutive iteration-best lengths differ by at most this fraction.
    pub epsilon: f64,
    pub tau0: f64,
    pub ants: AntCount,
    pub rng_seed: u64,
}

impl Default for AcoParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 10.0,
            rho: 0.4,
            q: 300.0,
            t_max: 1000,
            epsilon: 0.001,
            tau0: 1.0,
            ants: AntCount::Auto,
            rng_seed: 1,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AcoError {
    #[error("invalid ACO parameter {field} = {value}")]
    InvalidParam { field: &'static str, value: f64 },
    #[error("forced edge ({0}, {1}) is not an edge of a {2}-city subproblem")]
    BadForcedEdge(usize, usize, usize),
    #[error("distance matrix needs {expected} entries, got {found}")]
    BadMatrix { expected: usize, found: usize },
}

impl AcoParams {
    pub fn validate(&self) -> Result<(), AcoError> {
        let bad = |field: &'static str, value: f64| Err(AcoError::InvalidParam { field, value });
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return bad("alpha", self.alpha);
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return bad("beta", self.beta);
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return bad("rho", self.rho);
        }
        if !(self.q > 0.0 && self.q.is_finite()) {
            return bad("q", self.q);
        }
        if self.t_max == 0 {
            return bad("t_max", 0.0);
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad("epsilon", self.epsilon);
        }
        if !(self.tau0 > 0.0 && self.tau0.is_finite()) {
            return bad("tau0", self.tau0);
        }
        if self.ants == AntCount::Fixed(0) {
            return bad("ants", 0.0);
        }
        Ok(())
    }

    pub fn ant_count(&self, n: usize) -> usize {
        match self.ants {
            AntCount::Auto => (n as f64 / 1.5).floor().max(1.0) as usize,
            AntCount::Fixed(m) => m.max(1),
        }
    }
}

/// Dense symmetric distance table over a subproblem's local ids `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_points(points: &[Point], convention: DistanceConvention) -> Self {
        let n = points.len();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let w = point_distance(points[i], points[j], convention);
                d[i * n + j] = w;
                d[j * n + i] = w;
            }
        }
        Self { n, d }
    }

    /// Row-major `n * n` weights. The table is symmetrized from its upper triangle.
    pub fn from_weights(n: usize, mut d: Vec<f64>) -> Result<Self, AcoError> {
        if d.len() != n * n {
            return Err(AcoError::BadMatrix {
                expected: n * n,
                found: d.len(),
            });
        }
        for i in 0..n {
            d[i * n + i] = 0.0;
            for j in i + 1..n {
                d[j * n + i] = d[i * n + j];
            }
        }
        Ok(Self { n, d })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Mean off-diagonal weight, or 0 for fewer than two cities.
    pub fn mean(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.d.iter().sum::<f64>() / (self.n * (self.n - 1)) as f64
    }
}

/// A closed route over local ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    pub order: Vec<usize>,
    pub length: f64,
}

impl Tour {
    pub fn new(order: Vec<usize>, dm: &DistanceMatrix) -> Self {
        let length = tour_length(&order, dm);
        Self { order, length }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True when the order visits each of `0..n` exactly once.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        is_permutation(&self.order, n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        has_edge(&self.order, u, v)
    }
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &c in order {
        if c >= n || seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// Cycle length including the closing edge. A single city has length 0.
pub fn tour_length(order: &[usize], dm: &DistanceMatrix) -> f64 {
    if order.len() < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for k in 0..order.len() {
        total += dm.get(order[k], order[(k + 1) % order.len()]);
    }
    total
}

/// Whether `u` and `v` are adjacent in the cyclic order.
pub fn has_edge(order: &[usize], u: usize, v: usize) -> bool {
    let n = order.len();
    if n < 2 {
        return false;
    }
    (0..n).any(|k| {
        let a = order[k];
        let b = order[(k + 1) % n];
        (a == u && b == v) || (a == v && b == u)
    })
}
