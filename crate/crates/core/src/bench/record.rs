use std::io;

use serde::{Deserialize, Serialize};

use crate::pipeline::{Algorithm, Solution, SolveConfig};

pub const STATUS_OK: &str = "ok";
pub const STATUS_FAILED: &str = "failed";

/// Why a row's `error` is absent or suspicious.
pub const FLAG_MISSING_OPTIMUM: &str = "missing_optimum";
pub const FLAG_BELOW_OPTIMUM: &str = "below_optimum";
/// Set on `ratio_flag` when no positive ACO time exists for the row's instance and seed.
pub const FLAG_NO_ANCHOR: &str = "no_aco_anchor";

/// One CSV row: a single (instance, algorithm, seed) run. Column order is the field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub n: usize,
    pub algorithm: String,
    pub proposed: bool,
    pub seed: u64,
    pub status: String,
    pub message: String,
    pub length: Option<f64>,
    pub optimum: Option<f64>,
    pub error: Option<f64>,
    pub error_flag: String,
    pub ratio: Option<f64>,
    pub ratio_flag: String,
    pub time_total: f64,
    pub time_clustering: f64,
    pub time_ordering: f64,
    pub time_class_solve: f64,
    pub time_stitching: f64,
    pub time_repair: f64,
    pub classes: Option<usize>,
    pub clustering_capped: bool,
    pub bridge_fallbacks: usize,
    pub contended: bool,
    pub auto_added: bool,
    pub distance: String,
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub q: f64,
    pub t_max: usize,
    pub epsilon_aco: f64,
    pub tau0: f64,
    pub ants: usize,
    pub epsilon_cluster: f64,
    pub m0: Option<usize>,
    pub seeds_file: bool,
}

pub(crate) struct RunContext<'a> {
    pub instance: &'a str,
    pub n: usize,
    pub distance: String,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub config: &'a SolveConfig,
    pub m0: Option<usize>,
    pub seeds_file: bool,
    pub contended: bool,
    pub auto_added: bool,
}

impl RunRecord {
    pub(crate) fn blank(ctx: &RunContext<'_>) -> Self {
        let aco = &ctx.config.aco;
        Self {
            instance: ctx.instance.to_string(),
            n: ctx.n,
            algorithm: ctx.algorithm.name().to_string(),
            proposed: ctx.algorithm.is_proposed(),
            seed: ctx.seed,
            status: STATUS_OK.into(),
            message: String::new(),
            length: None,
            optimum: None,
            error: None,
            error_flag: String::new(),
            ratio: None,
            ratio_flag: String::new(),
            time_total: 0.0,
            time_clustering: 0.0,
            time_ordering: 0.0,
            time_class_solve: 0.0,
            time_stitching: 0.0,
            time_repair: 0.0,
            classes: None,
            clustering_capped: false,
            bridge_fallbacks: 0,
            contended: ctx.contended,
            auto_added: ctx.auto_added,
            distance: ctx.distance.clone(),
            alpha: aco.alpha,
            beta: aco.beta,
            rho: aco.rho,
            q: aco.q,
            t_max: aco.t_max,
            epsilon_aco: aco.epsilon,
            tau0: aco.tau0,
            ants: aco.ant_count(ctx.n),
            epsilon_cluster: ctx.config.cluster.epsilon,
            m0: ctx.m0,
            seeds_file: ctx.seeds_file,
        }
    }

    pub(crate) fn from_solution(ctx: &RunContext<'_>, solution: &Solution) -> Self {
        let t = &solution.timing;
        Self {
            length: Some(solution.length),
            time_total: t.total.as_secs_f64(),
            time_clustering: t.clustering.as_secs_f64(),
            time_ordering: t.ordering.as_secs_f64(),
            time_class_solve: t.class_solve.as_secs_f64(),
            time_stitching: t.stitching.as_secs_f64(),
            time_repair: t.repair.as_secs_f64(),
            classes: Some(solution.classes),
            clustering_capped: solution.clustering_capped,
            bridge_fallbacks: solution.bridge_fallbacks,
            ..Self::blank(ctx)
        }
    }

    pub(crate) fn failed(ctx: &RunContext<'_>, message: String) -> Self {
        Self {
            status: STATUS_FAILED.into(),
            message,
            ..Self::blank(ctx)
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == STATUS_OK
    }
}

pub fn write_records<W: io::Write>(writer: W, records: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: io::Read>(reader: R) -> csv::Result<Vec<RunRecord>> {
    csv::Reader::from_reader(reader).deserialize().collect()
}

/// Header line of the run CSV, for documentation and stability checks.
pub fn csv_header() -> String {
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let ctx = RunContext {
            instance: "",
            n: 0,
            distance: String::new(),
            algorithm: Algorithm::Aco,
            seed: 0,
            config: &SolveConfig::default(),
            m0: None,
            seeds_file: false,
            contended: false,
            auto_added: false,
        };
        w.serialize(RunRecord::blank(&ctx)).expect("in-memory write");
    }
    let text = String::from_utf8(buf).expect("csv is utf-8");
    text.lines().next().unwrap_or_default().to_string()
}
