use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::LevelFilter;

use aco_slc::aco::AcoParams;
use aco_slc::clustering::ClusterConfig;
use aco_slc::instance::DistanceConvention;

#[derive(Debug, Parser)]
#[command(name = "aco-slc", version, about = "Clustered ant colony solver for Euclidean TSP")]
pub struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn verbosity(&self) -> LevelFilter {
        match self.verbose {
            0 => LevelFilter::Warn,
            1 => LevelFilter::Info,
            _ => LevelFilter::Debug,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance with one algorithm.
    Solve(SolveArgs),
    /// Run algorithms x instances x seeds and write CSV rows.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Distance {
    Rounded,
    Exact,
}

impl From<Distance> for DistanceConvention {
    fn from(d: Distance) -> Self {
        match d {
            Distance::Rounded => DistanceConvention::Rounded,
            Distance::Exact => DistanceConvention::Exact,
        }
    }
}

/// Flags shared by `solve` and `bench`.
#[derive(Debug, Args)]
pub struct Tuning {
    /// Initial centroids, one block per instance.
    #[arg(long, value_name = "PATH")]
    pub seeds_file: Option<PathBuf>,
    /// CSV of `name,optimum` rows.
    #[arg(long, value_name = "PATH")]
    pub optima: Option<PathBuf>,
    /// Initial class count (defaults to the seed count, else max(2, round(sqrt n))).
    #[arg(long)]
    pub m0: Option<usize>,
    #[arg(long, default_value_t = 0.001)]
    pub epsilon_cluster: f64,
    #[arg(long, default_value_t = 0.001)]
    pub epsilon_aco: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.4)]
    pub rho: f64,
    #[arg(long, default_value_t = 300.0)]
    pub q: f64,
    #[arg(long, default_value_t = 1000)]
    pub tmax: usize,
    #[arg(long, value_enum, default_value_t = Distance::Rounded)]
    pub distance: Distance,
}

impl Tuning {
    pub fn aco_params(&self) -> AcoParams {
        AcoParams {
            alpha: self.alpha,
            beta: self.beta,
            rho: self.rho,
            q: self.q,
            t_max: self.tmax,
            epsilon: self.epsilon_aco,
            ..AcoParams::default()
        }
    }

    pub fn cluster_config(&self) -> ClusterConfig {
        ClusterConfig {
            m0: self.m0,
            epsilon: self.epsilon_cluster,
            ..ClusterConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_name = "PATH")]
    pub instance: PathBuf,
    /// ACO, ACO_KMEANS, ACO_SLC, ACO_SLC_LWCR or ACO_SLC_MIXTURE.
    #[arg(long)]
    pub algorithm: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Append the run as a CSV row (header written when the file is new).
    #[arg(long, value_name = "CSV")]
    pub out: Option<PathBuf>,
    /// Write the tour as 1-based city ids, one per line.
    #[arg(long, value_name = "PATH")]
    pub tour: Option<PathBuf>,
    /// Write the final partition in the dump format.
    #[arg(long, value_name = "PATH")]
    pub dump_partition: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: Tuning,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of `.tsp` files, or a comma-separated list of paths.
    #[arg(long)]
    pub instances: String,
    /// Comma-separated algorithm names, or `all`.
    #[arg(long, default_value = "all")]
    pub algorithms: String,
    /// Comma-separated seeds or an inclusive range like `1..5`.
    #[arg(long, default_value = "1..5")]
    pub seeds: String,
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
    /// Bar chart of summary medians.
    #[arg(long, value_name = "SVG")]
    pub plot: Option<PathBuf>,
    /// Run (instance, seed) pairs concurrently; timings are marked contended.
    #[arg(long)]
    pub parallel: bool,
    #[command(flatten)]
    pub tuning: Tuning,
}
