use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AcoError, AcoParams, DistanceMatrix, Tour, WindowSets};

/// Lower bound applied to every trail after an update.
pub const TAU_FLOOR: f64 = 1e-12;

/// Trail matrix and run history.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneState {
    n: usize,
    tau: Vec<f64>,
    /// Completed iterations.
    pub iteration: usize,
    pub best: Option<Tour>,
    /// Iteration-best length of each completed iteration.
    pub iteration_best: Vec<f64>,
}

impl PheromoneState {
    pub fn new(n: usize, tau0: f64) -> Self {
        Self {
            n,
            tau: vec![tau0; n * n],
            iteration: 0,
            best: None,
            iteration_best: Vec::new(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.tau[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Off-diagonal entries are symmetric and strictly positive.
    pub fn is_symmetric_positive(&self) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| {
                let a = self.get(i, j);
                a > 0.0 && a == self.get(j, i)
            })
        })
    }
}

/// Precomputed `eta^beta` table plus the forced edge, if any.
///
/// `eta = scale / d` with `scale` the mean distance of the subproblem. The common factor
/// cancels in the choice probabilities but keeps `eta^beta` inside floating-point range.
/// Distances below `scale * f64::EPSILON` are raised to that floor.
#[derive(Debug, Clone)]
pub struct Heuristic {
    n: usize,
    eta_beta: Vec<f64>,
    forced: Option<(usize, usize)>,
}

impl Heuristic {
    pub fn new(dm: &DistanceMatrix, beta: f64, forced: Option<(usize, usize)>) -> Self {
        let n = dm.len();
        let mean = dm.mean();
        let scale = if mean > 0.0 { mean } else { 1.0 };
        let floor = scale * f64::EPSILON;
        let mut eta_beta = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    eta_beta[i * n + j] = (scale / dm.get(i, j).max(floor)).powf(beta);
                }
            }
        }
        Self { n, eta_beta, forced }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        self.eta_beta[i * self.n + j]
    }

    fn forced_partner(&self, city: usize) -> Option<usize> {
        match self.forced {
            Some((u, v)) if u == city => Some(v),
            Some((u, v)) if v == city => Some(u),
            _ => None,
        }
    }

    pub fn forced(&self) -> Option<(usize, usize)> {
        self.forced
    }
}

/// Moves `v` next to `u` with one segment reversal. No-op when already adjacent.
pub(crate) fn force_adjacent(order: &mut [usize], u: usize, v: usize) {
    if super::has_edge(order, u, v) {
        return;
    }
    let pu = order.iter().position(|&c| c == u).expect("u in tour");
    order.rotate_left(pu);
    let pv = order.iter().position(|&c| c == v).expect("v in tour");
    order[1..=pv].reverse();
}

/// One ant's tour. Returns the tour and the number of steps where the window held no
/// unvisited city and the choice widened to every unvisited city.
///
/// The ant starts at a uniformly random city. From city `i` it moves to a candidate `j` with
/// probability proportional to `tau_ij^alpha * eta_ij^beta`. The forced edge has zero
/// construction cost, so an ant standing on one of its ends steps to the other end whenever
/// that end is still unvisited; the partner always counts as a window member. A tour that
/// still misses the forced edge is repaired by a single segment reversal.
pub fn construct_tour<R: Rng + ?Sized>(
    dm: &DistanceMatrix,
    state: &PheromoneState,
    heuristic: &Heuristic,
    alpha: f64,
    windows: Option<&WindowSets>,
    rng: &mut R,
) -> (Tour, usize) {
    let n = dm.len();
    if n <= 2 {
        return (Tour::new((0..n).collect(), dm), 0);
    }
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut fallbacks = 0;
    let mut current = rng.random_range(0..n);
    visited[current] = true;
    order.push(current);

    let mut candidates: Vec<usize> = Vec::with_capacity(n);
    let mut weights: Vec<f64> = Vec::with_capacity(n);

    while order.len() < n {
        let next = match heuristic.forced_partner(current).filter(|&p| !visited[p]) {
            Some(p) => p,
            None => {
                candidates.clear();
                if let Some(w) = windows {
                    candidates.extend(w.get(current).iter().copied().filter(|&j| !visited[j]));
                }
                if candidates.is_empty() {
                    if windows.is_some() {
                        fallbacks += 1;
                    }
                    candidates.extend((0..n).filter(|&j| !visited[j]));
                }
                weights.clear();
                let mut total = 0.0;
                for &j in &candidates {
                    let tau = state.get(current, j);
                    let t = if alpha == 1.0 { tau } else { tau.powf(alpha) };
                    let w = t * heuristic.get(current, j);
                    total += w;
                    weights.push(w);
                }
                if total > 0.0 && total.is_finite() {
                    let mut target = rng.random::<f64>() * total;
                    let mut pick = candidates[candidates.len() - 1];
                    for (&j, &w) in candidates.iter().zip(&weights) {
                        if target < w {
                            pick = j;
                            break;
                        }
                        target -= w;
                    }
                    pick
                } else {
                    candidates[rng.random_range(0..candidates.len())]
                }
            }
        };
        visited[next] = true;
        order.push(next);
        current = next;
    }

    if let Some((u, v)) = heuristic.forced {
        force_adjacent(&mut order, u, v);
    }
    (Tour::new(order, dm), fallbacks)
}

/// Ant-cycle update: evaporate every trail by `1 - rho`, then add `q / L_k` to each edge of
/// every tour, both directions. Trails are floored at [`TAU_FLOOR`].
pub fn deposit_and_evaporate(state: &mut PheromoneState, tours: &[Tour], params: &AcoParams) {
    let keep = 1.0 - params.rho;
    for t in &mut state.tau {
        *t *= keep;
    }
    let n = state.n;
    for tour in tours {
        if tour.order.len() < 2 || tour.length <= 0.0 {
            continue;
        }
        let amount = params.q / tour.length;
        let m = tour.order.len();
        for k in 0..m {
            let a = tour.order[k];
            let b = tour.order[(k + 1) % m];
            state.tau[a * n + b] += amount;
            state.tau[b * n + a] += amount;
        }
    }
    for t in &mut state.tau {
        if *t < TAU_FLOOR {
            *t = TAU_FLOOR;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcoOutcome {
    /// Best tour over the whole run.
    pub tour: Tour,
    pub iterations: usize,
    /// Stopped by the convergence test rather than the iteration cap.
    pub converged: bool,
    pub window_fallbacks: usize,
    pub iteration_best: Vec<f64>,
    /// Best-so-far length after each iteration.
    pub best_so_far: Vec<f64>,
}

/// Runs the colony on a subproblem with local ids `0..dm.len()`.
///
/// Trails start at `tau0`. Each iteration builds `M` tours, records the iteration-best
/// length `L_t` and updates the trails. The run stops at the first `t` with
/// `|L_t - L_{t+1}| / L_t <= epsilon`, or after `t_max` iterations. Subproblems of at most
/// two cities return their only cycle without iterating.
pub fn run_aco(
    dm: &DistanceMatrix,
    params: &AcoParams,
    windows: Option<&WindowSets>,
    forced: Option<(usize, usize)>,
) -> Result<AcoOutcome, AcoError> {
    params.validate()?;
    let n = dm.len();
    if let Some((u, v)) = forced {
        if u >= n || v >= n || u == v {
            return Err(AcoError::BadForcedEdge(u, v, n));
        }
    }
    if n <= 2 {
        return Ok(AcoOutcome {
            tour: Tour::new((0..n).collect(), dm),
            iterations: 0,
            converged: true,
            window_fallbacks: 0,
            iteration_best: Vec::new(),
            best_so_far: Vec::new(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let heuristic = Heuristic::new(dm, params.beta, forced);
    let mut state = PheromoneState::new(n, params.tau0);
    let ants = params.ant_count(n);
    let mut fallbacks = 0;
    let mut best_so_far = Vec::new();
    let mut converged = false;
    let mut tours = Vec::with_capacity(ants);

    for _ in 0..params.t_max {
        tours.clear();
        for _ in 0..ants {
            let (tour, f) = construct_tour(dm, &state, &heuristic, params.alpha, windows, &mut rng);
            fallbacks += f;
            tours.push(tour);
        }
        let it_best = tours
            .iter()
            .min_by(|a, b| a.length.total_cmp(&b.length))
            .expect("at least one ant");
        if state.best.as_ref().is_none_or(|b| it_best.length < b.length) {
            state.best = Some(it_best.clone());
        }
        let l_next = it_best.length;
        deposit_and_evaporate(&mut state, &tours, params);
        state.iteration += 1;
        best_so_far.push(state.best.as_ref().map_or(f64::INFINITY, |b| b.length));

        if let Some(&l_prev) = state.iteration_best.last() {
            let settled = if l_prev > 0.0 {
                (l_prev - l_next).abs() / l_prev <= params.epsilon
            } else {
                l_next == 0.0
            };
            state.iteration_best.push(l_next);
            if settled {
                converged = true;
                break;
            }
        } else {
            state.iteration_best.push(l_next);
        }
    }

    Ok(AcoOutcome {
        tour: state.best.expect("at least one iteration"),
        iterations: state.iteration,
        converged,
        window_fallbacks: fallbacks,
        iteration_best: state.iteration_best,
        best_so_far,
    })
}
