use std::collections::BTreeMap;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{compute_error, compute_ratio, median};
use super::record::{RunContext, RunRecord, FLAG_BELOW_OPTIMUM, FLAG_MISSING_OPTIMUM, FLAG_NO_ANCHOR};
use crate::clustering::resolve_m0;
use crate::instance::{Instance, Point};
use crate::optima::OptimaTable;
use crate::pipeline::{solve, Algorithm, Solution, SolveConfig};

/// An instance plus its optional initial centroids.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub instance: Instance,
    pub seeds: Option<Vec<Point>>,
}

#[derive(Debug, Clone, Default)]
pub struct BatchConfig {
    pub solve: SolveConfig,
    pub optima: OptimaTable,
    /// Run (instance, seed) pairs concurrently. Rows are marked `contended`.
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub instance: String,
    pub algorithm: String,
    pub runs: usize,
    pub failed: usize,
    pub error_min: Option<f64>,
    pub error_median: Option<f64>,
    pub error_max: Option<f64>,
    pub ratio_min: Option<f64>,
    pub ratio_median: Option<f64>,
    pub ratio_max: Option<f64>,
    pub length_median: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BatchResult {
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub notes: Vec<String>,
}

impl BatchResult {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.is_ok()).count()
    }
}

/// The algorithm list actually run: ACO first, then the requested ones in order without repeats.
pub fn batch_algorithms(requested: &[Algorithm]) -> (Vec<Algorithm>, bool) {
    let auto = !requested.contains(&Algorithm::Aco);
    let mut out = vec![Algorithm::Aco];
    for &a in requested {
        if !out.contains(&a) {
            out.push(a);
        }
    }
    (out, auto)
}

pub fn run_batch(
    instances: &[BenchInstance],
    algorithms: &[Algorithm],
    seeds: &[u64],
    config: &BatchConfig,
) -> BatchResult {
    let (algos, auto_aco) = batch_algorithms(algorithms);
    let mut notes = Vec::new();
    if auto_aco {
        notes.push("ACO was not requested; added automatically to anchor Ratio".to_string());
    }
    if config.parallel {
        notes.push("parallel mode: wall times are contended".to_string());
    }

    let pairs: Vec<(usize, u64)> = (0..instances.len())
        .flat_map(|i| seeds.iter().map(move |&s| (i, s)))
        .collect();
    let job = |&(i, seed): &(usize, u64)| run_pair(&instances[i], &algos, seed, auto_aco, config);
    let mut grouped: Vec<Vec<RunRecord>> = if config.parallel {
        pairs.par_iter().map(job).collect()
    } else {
        pairs.iter().map(job).collect()
    };

    // Row order: instance, algorithm, seed.
    let mut records = Vec::with_capacity(pairs.len() * algos.len());
    for i in 0..instances.len() {
        for a in 0..algos.len() {
            for (p, &(pi, _)) in pairs.iter().enumerate() {
                if pi == i {
                    records.push(grouped[p][a].clone());
                }
            }
        }
    }
    grouped.clear();

    for r in records.iter().filter(|r| !r.is_ok()) {
        notes.push(format!("{} {} seed {} failed: {}", r.instance, r.algorithm, r.seed, r.message));
    }
    let missing: Vec<&str> = instances
        .iter()
        .map(|b| b.instance.name.as_str())
        .filter(|name| config.optima.get(name).is_none())
        .collect();
    if !missing.is_empty() {
        notes.push(format!("no optimum for {}; Error omitted", missing.join(", ")));
    }

    let summary = summarize(&records);
    BatchResult {
        records,
        summary,
        notes,
    }
}

fn run_pair(
    bench: &BenchInstance,
    algos: &[Algorithm],
    seed: u64,
    auto_aco: bool,
    config: &BatchConfig,
) -> Vec<RunRecord> {
    let solve_config = SolveConfig {
        seed,
        ..config.solve.clone()
    };
    let optimum = config.optima.get(&bench.instance.name);
    let mut rows: Vec<RunRecord> = algos
        .iter()
        .map(|&algorithm| {
            run_single(bench, algorithm, &solve_config, optimum, config.parallel, auto_aco && algorithm == Algorithm::Aco).0
        })
        .collect();

    let anchor = rows
        .first()
        .filter(|r| r.is_ok())
        .map(|r| r.time_total);
    for row in rows.iter_mut().filter(|r| r.is_ok()) {
        match anchor.map(|t| compute_ratio(t, row.time_total)) {
            Some(Ok(ratio)) => row.ratio = Some(ratio),
            _ => row.ratio_flag = FLAG_NO_ANCHOR.into(),
        }
    }
    rows
}

/// Runs one algorithm and fills every column except `ratio`. ACO ignores the seed centroids.
pub fn run_single(
    bench: &BenchInstance,
    algorithm: Algorithm,
    config: &SolveConfig,
    optimum: Option<f64>,
    contended: bool,
    auto_added: bool,
) -> (RunRecord, Option<Solution>) {
    let instance = &bench.instance;
    let seeds = if algorithm == Algorithm::Aco { None } else { bench.seeds.as_deref() };
    let m0 = if algorithm == Algorithm::Aco {
        None
    } else {
        resolve_m0(instance.len(), seeds, &config.cluster).ok()
    };
    let ctx = RunContext {
        instance: &instance.name,
        n: instance.len(),
        distance: instance.convention.to_string(),
        algorithm,
        seed: config.seed,
        config,
        m0,
        seeds_file: seeds.is_some(),
        contended,
        auto_added,
    };
    let (mut row, solution) = match solve(instance, algorithm, config, seeds) {
        Ok(sol) => {
            info!(
                "{} {} seed {}: length {} in {:.4}s",
                instance.name,
                algorithm,
                config.seed,
                sol.length,
                sol.timing.total.as_secs_f64()
            );
            (RunRecord::from_solution(&ctx, &sol), Some(sol))
        }
        Err(e) => {
            warn!("{} {} seed {} failed: {e}", instance.name, algorithm, config.seed);
            (RunRecord::failed(&ctx, e.to_string()), None)
        }
    };
    if row.is_ok() {
        row.optimum = optimum;
        match optimum.map(|opt| compute_error(row.length.unwrap_or(f64::NAN), opt)) {
            Some(Ok(err)) => {
                row.error = Some(err);
                if err < -1e-9 {
                    row.error_flag = FLAG_BELOW_OPTIMUM.into();
                }
            }
            _ => row.error_flag = FLAG_MISSING_OPTIMUM.into(),
        }
    }
    (row, solution)
}

/// Min/median/max of Error and Ratio per (instance, algorithm), in first-seen row order.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, String)> = Vec::new();
    let mut groups: BTreeMap<(String, String), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        let key = (r.instance.clone(), r.algorithm.clone());
        if !groups.contains_key(&key) {
            keys.push(key.clone());
        }
        groups.entry(key).or_default().push(r);
    }
    keys.into_iter()
        .map(|key| {
            let rows = &groups[&key];
            let ok: Vec<&&RunRecord> = rows.iter().filter(|r| r.is_ok()).collect();
            let errors: Vec<f64> = ok.iter().filter_map(|r| r.error).collect();
            let ratios: Vec<f64> = ok.iter().filter_map(|r| r.ratio).collect();
            let lengths: Vec<f64> = ok.iter().filter_map(|r| r.length).collect();
            let (error_min, error_max) = min_max(&errors);
            let (ratio_min, ratio_max) = min_max(&ratios);
            SummaryRow {
                instance: key.0,
                algorithm: key.1,
                runs: rows.len(),
                failed: rows.len() - ok.len(),
                error_min,
                error_median: median(&errors),
                error_max,
                ratio_min,
                ratio_median: median(&ratios),
                ratio_max,
                length_median: median(&lengths),
            }
        })
        .collect()
}

fn min_max(values: &[f64]) -> (Option<f64>, Option<f64>) {
    let min = values.iter().copied().min_by(f64::total_cmp);
    let max = values.iter().copied().max_by(f64::total_cmp);
    (min, max)
}

/// Renders the summary as a fixed-width text table.
pub fn format_summary(summary: &[SummaryRow]) -> String {
    let cell = |v: Option<f64>, pct: bool| match v {
        Some(x) if pct => format!("{:.2}%", x * 100.0),
        Some(x) => format!("{x:.1}"),
        None => "-".to_string(),
    };
    let mut out = format!(
        "{:<10} {:<16} {:>4} {:>4} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}\n",
        "instance", "algorithm", "runs", "fail", "err_min", "err_med", "err_max", "ratio_min", "ratio_med", "ratio_max"
    );
    for s in summary {
        out.push_str(&format!(
            "{:<10} {:<16} {:>4} {:>4} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}\n",
            s.instance,
            s.algorithm,
            s.runs,
            s.failed,
            cell(s.error_min, true),
            cell(s.error_median, true),
            cell(s.error_max, true),
            cell(s.ratio_min, false),
            cell(s.ratio_median, false),
            cell(s.ratio_max, false),
        ));
    }
    out
}
