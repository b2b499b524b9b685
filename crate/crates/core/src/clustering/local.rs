use log::debug;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    assign_and_update, compact_region, default_m0, entropy_converged, kmeans_plus_plus, ClassState,
    ClusterConfig, ClusterError, Shape,
};
use crate::instance::Point;

/// Result of one local clustering call: the compact classes and the points left over.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalClusterOutcome {
    pub extracted: Vec<ClassState>,
    /// Spilled fringe points, ascending.
    pub residual: Vec<usize>,
    pub sweeps: usize,
    /// The sweep cap was hit and the remaining classes were forced stable.
    pub capped: bool,
}

/// Final SLC partition.
#[derive(Debug, Clone, PartialEq)]
pub struct SlcOutcome {
    pub classes: Vec<ClassState>,
    pub rounds: usize,
    /// Classes from the outer rounds; the rest are singletons made from the final residual.
    pub compact_count: usize,
    pub capped: bool,
}

impl SlcOutcome {
    pub fn num(&self) -> usize {
        self.classes.len()
    }
}

fn entropy_of(class: &ClassState) -> f64 {
    if class.is_empty() {
        0.0
    } else {
        (class.len() as f64).log2()
    }
}

/// Local clustering with compact-region extraction.
///
/// Runs K-Means sweeps over `t` starting from `seeds`. After every sweep each live class whose
/// entropy `log2 |R|` has settled is marked stable; its central region of radius
/// `(D + 3δ) / 4^p` becomes an extracted class, its fringe joins the residual, and all of its
/// members leave the training set. Sweeps continue on what remains until no live class is left.
pub fn local_cluster_3delta(
    points: &[Point],
    t: &[usize],
    seeds: &[Point],
    epsilon: f64,
    p: u32,
    sweep_cap: usize,
) -> Result<LocalClusterOutcome, ClusterError> {
    if seeds.is_empty() {
        return Err(ClusterError::NoClasses);
    }
    if seeds.len() > t.len() {
        return Err(ClusterError::TooManyClasses {
            classes: seeds.len(),
            points: t.len(),
        });
    }

    let mut live: Vec<usize> = t.to_vec();
    live.sort_unstable();
    let seeded: Vec<ClassState> = seeds.iter().map(|&c| ClassState::seeded(c)).collect();
    let mut classes = assign_and_update(points, &live, &seeded);
    for c in &mut classes {
        c.entropy.push(entropy_of(c));
    }

    let mut extracted = Vec::new();
    let mut residual = Vec::new();
    let mut sweeps = 0;
    let mut capped = false;

    while !classes.is_empty() {
        classes = assign_and_update(points, &live, &classes);
        sweeps += 1;
        let force = sweeps >= sweep_cap;
        if force {
            capped = true;
            debug!("local clustering hit the {sweep_cap}-sweep cap with {} live classes", classes.len());
        }

        for c in &mut classes {
            let h = entropy_of(c);
            let prev = *c.entropy.last().expect("history seeded before the loop");
            c.stable = force || entropy_converged(prev, h, epsilon);
            c.entropy.push(h);
        }

        let (stable, still_live): (Vec<ClassState>, Vec<ClassState>) =
            classes.into_iter().partition(|c| c.stable);
        classes = still_live;
        if stable.is_empty() {
            continue;
        }

        let mut leaving = Vec::new();
        for class in stable {
            if class.is_empty() {
                continue;
            }
            let (kept, spilled) = compact_region(points, &class, p);
            leaving.extend_from_slice(&class.members);
            residual.extend(spilled);
            if !kept.is_empty() {
                let mut k = ClassState::from_members(points, kept, Shape::Unknown);
                k.entropy = class.entropy;
                k.stable = true;
                extracted.push(k);
            }
        }
        leaving.sort_unstable();
        live.retain(|i| leaving.binary_search(i).is_err());
    }

    debug_assert!(live.is_empty());
    residual.sort_unstable();
    Ok(LocalClusterOutcome {
        extracted,
        residual,
        sweeps,
        capped,
    })
}

/// Class count for a run: the seed count when seeds are given, else `config.m0`, else
/// [`default_m0`] capped at `n`.
pub fn resolve_m0(n: usize, seeds: Option<&[Point]>, config: &ClusterConfig) -> Result<usize, ClusterError> {
    match (seeds, config.m0) {
        (Some(s), Some(m)) if s.len() != m => Err(ClusterError::SeedCountMismatch {
            given: s.len(),
            classes: m,
        }),
        (Some(s), _) => Ok(s.len()),
        (None, Some(m)) => Ok(m),
        (None, None) => Ok(default_m0(n).min(n)),
    }
}

/// Special local clustering over `ids`.
///
/// Runs `floor(log2 m0)` rounds of [`local_cluster_3delta`] on the shrinking residual,
/// halving the class count and incrementing `p` after each round. Round 0 starts from
/// `seeds` when given; other starts come from k-means++ driven by `config.rng_seed`.
/// Every point still unclassified afterwards becomes a singleton class.
pub fn slc(
    points: &[Point],
    ids: &[usize],
    seeds: Option<&[Point]>,
    config: &ClusterConfig,
) -> Result<SlcOutcome, ClusterError> {
    config.validate()?;
    let m0 = resolve_m0(ids.len(), seeds, config)?;
    if m0 == 0 {
        return Err(ClusterError::NoClasses);
    }
    if m0 > ids.len() {
        return Err(ClusterError::TooManyClasses {
            classes: m0,
            points: ids.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut t: Vec<usize> = ids.to_vec();
    t.sort_unstable();
    let mut classes = Vec::new();
    let mut m = m0;
    let mut capped = false;
    let total_rounds = m0.ilog2() as usize;
    let mut rounds = 0;

    for round in 0..total_rounds {
        if t.is_empty() {
            break;
        }
        let k = m.min(t.len());
        let start = match seeds {
            Some(s) if round == 0 => s.to_vec(),
            _ => kmeans_plus_plus(points, &t, k, &mut rng)?,
        };
        let out = local_cluster_3delta(points, &t, &start, config.epsilon, round as u32, config.sweep_cap)?;
        debug!(
            "slc round {round}: m={k}, extracted {} classes, residual {}",
            out.extracted.len(),
            out.residual.len()
        );
        capped |= out.capped;
        classes.extend(out.extracted);
        t = out.residual;
        m /= 2;
        rounds += 1;
    }

    let compact_count = classes.len();
    classes.extend(t.into_iter().map(|i| ClassState::from_members(points, vec![i], Shape::Unknown)));
    Ok(SlcOutcome {
        classes,
        rounds,
        compact_count,
        capped,
    })
}
