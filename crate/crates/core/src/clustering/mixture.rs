use super::{chain_cluster, is_spherical, slc, ClassState, ClusterConfig, ClusterError, Shape};
use crate::instance::Point;

/// Labeled partition from the mixture pass.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureOutcome {
    /// Spherical classes first, then chains, then one singleton class per isolated point.
    pub classes: Vec<ClassState>,
    pub capped: bool,
}

impl MixtureOutcome {
    pub fn count(&self, shape: Shape) -> usize {
        self.classes.iter().filter(|c| c.shape == shape).count()
    }
}

/// SLC, then keep the spherical classes and chain-cluster every other point.
pub fn slc_mixture(
    points: &[Point],
    ids: &[usize],
    seeds: Option<&[Point]>,
    config: &ClusterConfig,
) -> Result<MixtureOutcome, ClusterError> {
    let base = slc(points, ids, seeds, config)?;
    let mut classes = Vec::new();
    let mut residual = Vec::new();
    for mut class in base.classes {
        if is_spherical(points, &class, config.sector_floor) {
            class.shape = Shape::Spherical;
            classes.push(class);
        } else {
            residual.extend_from_slice(&class.members);
        }
    }
    if !residual.is_empty() {
        residual.sort_unstable();
        let chains = chain_cluster(points, &residual, config.trace_threshold, config.merge_factor);
        classes.extend(chains.chains);
        classes.extend(
            chains
                .isolated
                .into_iter()
                .map(|i| ClassState::from_members(points, vec![i], Shape::Isolated)),
        );
    }
    Ok(MixtureOutcome {
        classes,
        capped: base.capped,
    })
}
