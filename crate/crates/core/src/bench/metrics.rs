use super::BenchError;

/// `(solution - optimum) / optimum`.
pub fn compute_error(solution: f64, optimum: f64) -> Result<f64, BenchError> {
    if !(optimum > 0.0) {
        return Err(BenchError::BadOptimum(optimum));
    }
    Ok((solution - optimum) / optimum)
}

/// `time_aco / time_algorithm`.
pub fn compute_ratio(time_aco: f64, time_algorithm: f64) -> Result<f64, BenchError> {
    if !(time_aco > 0.0) || !(time_algorithm > 0.0) {
        return Err(BenchError::BadTiming {
            aco: time_aco,
            algorithm: time_algorithm,
        });
    }
    Ok(time_aco / time_algorithm)
}

/// Median of `values`; the mean of the middle pair for even counts. `None` when empty.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { (v[mid - 1] + v[mid]) / 2.0 })
}
