//! Benchmark harness: Ratio and Error metrics, batch runs, CSV rows and summaries.

mod batch;
mod metrics;
mod plot;
mod record;

use thiserror::Error;

pub use batch::{batch_algorithms, format_summary, run_batch, run_single, summarize, BatchConfig, BatchResult, BenchInstance, SummaryRow};
pub use metrics::{compute_error, compute_ratio, median};
pub use plot::render_svg;
pub use record::{
    csv_header, read_records, write_records, RunRecord, FLAG_BELOW_OPTIMUM, FLAG_MISSING_OPTIMUM, FLAG_NO_ANCHOR,
    STATUS_FAILED, STATUS_OK,
};

#[derive(Debug, Error, PartialEq)]
pub enum BenchError {
    #[error("optimum must be positive, got {0}")]
    BadOptimum(f64),
    #[error("timings must be positive (ACO {aco}s, algorithm {algorithm}s)")]
    BadTiming { aco: f64, algorithm: f64 },
}

/// Seeds used when a batch does not name any.
pub const DEFAULT_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
