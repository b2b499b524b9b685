use super::{ClassState, ClusterError};
use crate::instance::Point;

/// Sector index of `p` around `centroid`.
///
/// Sector `k` is the half-open angular range `[45k°, 45(k+1)°)` measured counterclockwise
/// from east, so a point lying on a dividing line belongs to the counterclockwise-next
/// sector. A point coincident with the centroid is in sector 0. Uses sign tests only.
pub fn sector_of(p: Point, centroid: Point) -> usize {
    let dx = p.x - centroid.x;
    let dy = p.y - centroid.y;
    if dx == 0.0 && dy == 0.0 {
        return 0;
    }
    if dx > 0.0 && dy >= 0.0 {
        if dy < dx {
            0
        } else {
            1
        }
    } else if dx <= 0.0 && dy > 0.0 {
        if -dx < dy {
            2
        } else {
            3
        }
    } else if dx < 0.0 && dy <= 0.0 {
        if -dy < -dx {
            4
        } else {
            5
        }
    } else if dx < -dy {
        6
    } else {
        7
    }
}

/// Fraction of the class in each of the 8 sectors around its centroid.
pub fn sector_percentages(points: &[Point], class: &ClassState) -> Result<[f64; 8], ClusterError> {
    if class.len() < 8 {
        return Err(ClusterError::TooFewForSectors(class.len()));
    }
    let mut counts = [0usize; 8];
    for &i in &class.members {
        counts[sector_of(points[i], class.centroid)] += 1;
    }
    let n = class.len() as f64;
    Ok(counts.map(|c| c as f64 / n))
}

/// True when every sector holds at least `sector_floor` of the class. Classes with fewer
/// than 8 members are never spherical.
pub fn is_spherical(points: &[Point], class: &ClassState, sector_floor: f64) -> bool {
    match sector_percentages(points, class) {
        Ok(shares) => shares.iter().all(|&s| s >= sector_floor),
        Err(_) => false,
    }
}
