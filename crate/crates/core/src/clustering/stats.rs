use super::{ClassState, ClusterError};
use crate::instance::Point;

/// Mean position of `members`.
pub fn centroid_of(points: &[Point], members: &[usize]) -> Result<Point, ClusterError> {
    if members.is_empty() {
        return Err(ClusterError::EmptyClass);
    }
    let (sx, sy) = members
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &i| (sx + points[i].x, sy + points[i].y));
    let n = members.len() as f64;
    Ok(Point::new(sx / n, sy / n))
}

/// Mean member-to-centroid distance.
pub fn distortion(points: &[Point], class: &ClassState) -> Result<f64, ClusterError> {
    if class.members.is_empty() {
        return Err(ClusterError::EmptyClass);
    }
    let sum: f64 = class
        .members
        .iter()
        .map(|&i| points[i].dist(class.centroid))
        .sum();
    Ok(sum / class.members.len() as f64)
}

/// Mean absolute difference between member-to-centroid distances and the distortion.
pub fn deviation(points: &[Point], class: &ClassState) -> Result<f64, ClusterError> {
    let d = distortion(points, class)?;
    let sum: f64 = class
        .members
        .iter()
        .map(|&i| (points[i].dist(class.centroid) - d).abs())
        .sum();
    Ok(sum / class.members.len() as f64)
}

/// Uniform-probability entropy estimate, log2 of the class size.
pub fn entropy_estimate(class: &ClassState) -> Result<f64, ClusterError> {
    if class.members.is_empty() {
        return Err(ClusterError::EmptyClass);
    }
    Ok((class.members.len() as f64).log2())
}

/// Relative entropy change below `epsilon`. A zero previous entropy converges only onto zero.
pub fn entropy_converged(prev: f64, next: f64, epsilon: f64) -> bool {
    if prev == 0.0 {
        return next == 0.0;
    }
    ((prev - next).abs() / prev) < epsilon
}

/// Splits a class into its central region of radius `(D + 3δ) / 4^p` and the remainder.
pub fn compact_region(points: &[Point], class: &ClassState, p: u32) -> (Vec<usize>, Vec<usize>) {
    if class.members.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let d = distortion(points, class).unwrap_or(0.0);
    let dev = deviation(points, class).unwrap_or(0.0);
    let radius = (d + 3.0 * dev) / 4f64.powi(p as i32);
    class
        .members
        .iter()
        .partition(|&&i| points[i].dist(class.centroid) <= radius)
}
