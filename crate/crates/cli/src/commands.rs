use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};

use aco_slc::bench::{
    format_summary, render_svg, run_batch, run_single, write_records, BatchConfig, BenchInstance, DEFAULT_SEEDS,
    FLAG_NO_ANCHOR,
};
use aco_slc::clustering::dump_partition;
use aco_slc::instance::{parse_tsplib, Instance, Point};
use aco_slc::optima::{load_optima, OptimaTable};
use aco_slc::pipeline::{Algorithm, SolveConfig};
use aco_slc::seeds::{parse_seed_blocks, SeedSet};

use crate::args::{BenchArgs, Cli, Command, SolveArgs, Tuning};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable inputs; exit code 2.
    Usage(String),
    /// A run failed; exit code 1.
    Run(String),
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Bench(args) => bench(args),
    }
}

fn read(path: &Path, what: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {what} {}: {e}", path.display())))
}

fn load_instance(path: &Path, tuning: &Tuning) -> Result<Instance, CliError> {
    let text = read(path, "instance")?;
    let instance = parse_tsplib(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(instance.with_convention(tuning.distance.into()))
}

fn load_seed_blocks(tuning: &Tuning) -> Result<Vec<SeedSet>, CliError> {
    match &tuning.seeds_file {
        None => Ok(Vec::new()),
        Some(path) => {
            let text = read(path, "seeds file")?;
            parse_seed_blocks(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
    }
}

fn seeds_for(blocks: &[SeedSet], name: &str) -> Option<Vec<Point>> {
    if let [only] = blocks {
        if only.instance_name.is_empty() {
            return Some(only.centroids.clone());
        }
    }
    blocks
        .iter()
        .find(|b| b.instance_name.eq_ignore_ascii_case(name))
        .map(|b| b.centroids.clone())
}

fn load_optima_table(tuning: &Tuning) -> Result<OptimaTable, CliError> {
    match &tuning.optima {
        None => Ok(OptimaTable::default()),
        Some(path) => {
            let text = read(path, "optima")?;
            load_optima(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
    }
}

fn solve_config(tuning: &Tuning, seed: u64) -> Result<SolveConfig, CliError> {
    let config = SolveConfig {
        aco: tuning.aco_params(),
        cluster: tuning.cluster_config(),
        seed,
        ..SolveConfig::default()
    };
    config.aco.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    config.cluster.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(config)
}

pub fn parse_algorithms(list: &str) -> Result<Vec<Algorithm>, String> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Algorithm::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let a: Algorithm = part.parse()?;
        if !out.contains(&a) {
            out.push(a);
        }
    }
    if out.is_empty() {
        return Err("no algorithms given".into());
    }
    Ok(out)
}

pub fn parse_seeds(list: &str) -> Result<Vec<u64>, String> {
    let list = list.trim();
    if list.is_empty() {
        return Ok(DEFAULT_SEEDS.to_vec());
    }
    let bad = |s: &str| format!("bad seed `{s}`");
    if let Some((a, b)) = list.split_once("..") {
        let lo: u64 = a.trim().parse().map_err(|_| bad(a))?;
        let hi: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad(b))?;
        if hi < lo {
            return Err(format!("empty seed range `{list}`"));
        }
        return Ok((lo..=hi).collect());
    }
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let s: u64 = part.parse().map_err(|_| bad(part))?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

fn instance_paths(arg: &str) -> Result<Vec<PathBuf>, CliError> {
    let as_dir = Path::new(arg.trim());
    if as_dir.is_dir() {
        let mut paths: Vec<PathBuf> = fs::read_dir(as_dir)
            .map_err(|e| CliError::Usage(format!("cannot list {}: {e}", as_dir.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("tsp")))
            .collect();
        paths.sort();
        if paths.is_empty() {
            return Err(CliError::Usage(format!("no .tsp files in {}", as_dir.display())));
        }
        return Ok(paths);
    }
    let paths: Vec<PathBuf> = arg
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(PathBuf::from)
        .collect();
    if paths.is_empty() {
        return Err(CliError::Usage("no instances given".into()));
    }
    Ok(paths)
}

fn solve(args: SolveArgs) -> Result<(), CliError> {
    let algorithm: Algorithm = args.algorithm.parse().map_err(CliError::Usage)?;
    let config = solve_config(&args.tuning, args.seed)?;
    let instance = load_instance(&args.instance, &args.tuning)?;
    let blocks = load_seed_blocks(&args.tuning)?;
    let seeds = seeds_for(&blocks, &instance.name);
    if args.tuning.seeds_file.is_some() && seeds.is_none() {
        return Err(CliError::Usage(format!("seeds file has no block for `{}`", instance.name)));
    }
    let optima = load_optima_table(&args.tuning)?;
    let bench = BenchInstance { instance, seeds };

    let (mut row, solution) = run_single(&bench, algorithm, &config, optima.get(&bench.instance.name), false, false);
    if row.is_ok() {
        if algorithm == Algorithm::Aco {
            row.ratio = Some(1.0);
        } else {
            row.ratio_flag = FLAG_NO_ANCHOR.into();
        }
    }
    if let Some(out) = &args.out {
        append_row(out, &row)?;
    }
    let Some(solution) = solution else {
        return Err(CliError::Run(format!("{} on {}: {}", algorithm, bench.instance.name, row.message)));
    };

    println!("instance  {}", bench.instance.name);
    println!("algorithm {algorithm}");
    println!("seed      {}", args.seed);
    println!("length    {}", solution.length);
    match row.error {
        Some(e) => println!("error     {:.4}%", e * 100.0),
        None => println!("error     - ({})", row.error_flag),
    }
    println!("classes   {}", solution.classes);
    println!("time      {:.6}s", row.time_total);
    if solution.clustering_capped {
        warn!("clustering hit the sweep cap");
    }

    if let Some(path) = &args.tour {
        let text: String = solution.order.iter().map(|c| format!("{}\n", c + 1)).collect();
        fs::write(path, text).map_err(|e| CliError::Run(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(path) = &args.dump_partition {
        fs::write(path, dump_partition(&solution.partition))
            .map_err(|e| CliError::Run(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn append_row(path: &Path, row: &aco_slc::bench::RunRecord) -> Result<(), CliError> {
    let fail = |e: String| CliError::Run(format!("cannot write {}: {e}", path.display()));
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut buf = Vec::new();
    write_records(&mut buf, std::slice::from_ref(row)).map_err(|e| fail(e.to_string()))?;
    let text = String::from_utf8(buf).map_err(|e| fail(e.to_string()))?;
    let body = if fresh {
        text
    } else {
        text.lines().skip(1).map(|l| format!("{l}\n")).collect()
    };
    use std::io::Write;
    fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .and_then(|mut f| f.write_all(body.as_bytes()))
        .map_err(|e| fail(e.to_string()))
}

fn bench(args: BenchArgs) -> Result<(), CliError> {
    let algorithms = parse_algorithms(&args.algorithms).map_err(CliError::Usage)?;
    let seeds = parse_seeds(&args.seeds).map_err(CliError::Usage)?;
    let solve = solve_config(&args.tuning, 1)?;
    let blocks = load_seed_blocks(&args.tuning)?;
    let optima = load_optima_table(&args.tuning)?;

    let mut instances = Vec::new();
    for path in instance_paths(&args.instances)? {
        let instance = load_instance(&path, &args.tuning)?;
        let seeds = seeds_for(&blocks, &instance.name);
        if args.tuning.seeds_file.is_some() && seeds.is_none() {
            warn!("no seed block for {}; clustering uses kmeans++ starts", instance.name);
        }
        info!("loaded {} ({} cities)", instance.name, instance.len());
        instances.push(BenchInstance { instance, seeds });
    }

    let config = BatchConfig {
        solve,
        optima,
        parallel: args.parallel,
    };
    let result = run_batch(&instances, &algorithms, &seeds, &config);

    let file = fs::File::create(&args.out)
        .map_err(|e| CliError::Run(format!("cannot write {}: {e}", args.out.display())))?;
    write_records(file, &result.records).map_err(|e| CliError::Run(format!("{}: {e}", args.out.display())))?;
    if let Some(plot) = &args.plot {
        fs::write(plot, render_svg(&result.summary))
            .map_err(|e| CliError::Run(format!("cannot write {}: {e}", plot.display())))?;
    }

    print!("{}", format_summary(&result.summary));
    for note in &result.notes {
        println!("note: {note}");
    }
    match result.failures() {
        0 => Ok(()),
        n => Err(CliError::Run(format!("{n} of {} runs failed", result.records.len()))),
    }
}
