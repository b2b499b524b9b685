use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aco-slc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_instance(dir: &Path, name: &str, n: usize, offset: f64) -> PathBuf {
    let mut text = format!("NAME : {name}\nTYPE : TSP\nDIMENSION : {n}\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n");
    for i in 0..n {
        let blob = if i % 2 == 0 { 0.0 } else { 500.0 };
        let x = blob + offset + (i * 37 % 101) as f64;
        let y = blob + (i * 53 % 89) as f64;
        text.push_str(&format!("{} {x} {y}\n", i + 1));
    }
    text.push_str("EOF\n");
    let path = dir.join(format!("{name}.tsp"));
    fs::write(&path, text).unwrap();
    path
}

fn quick(args: &mut Vec<&str>) {
    args.extend(["--tmax", "40"]);
}

#[test]
fn solve_writes_row_tour_and_partition() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(dir.path(), "blobs", 40, 0.0);
    let csv = dir.path().join("one.csv");
    let tour = dir.path().join("t.txt");
    let part = dir.path().join("p.txt");
    let optima = dir.path().join("opt.csv");
    fs::write(&optima, "name,optimum\nblobs,1000\n").unwrap();
    let mut args = vec![
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--algorithm",
        "aco-slc-mixture",
        "--seed",
        "3",
        "--optima",
        optima.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--tour",
        tour.to_str().unwrap(),
        "--dump-partition",
        part.to_str().unwrap(),
    ];
    quick(&mut args);
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("ACO_SLC_MIXTURE"));
    assert!(stdout.contains("error"));

    let mut ids: Vec<usize> = fs::read_to_string(&tour)
        .unwrap()
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    ids.sort_unstable();
    assert_eq!(ids, (1..=40).collect::<Vec<_>>());

    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 2);
    assert!(rows.lines().nth(1).unwrap().contains("no_aco_anchor"));
    assert!(fs::read_to_string(&part).unwrap().starts_with("class "));

    // a second run appends without repeating the header
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(dir.path(), "u", 12, 0.0);
    let inst = inst.to_str().unwrap();
    for args in [
        vec!["solve", "--instance", inst, "--algorithm", "tabu"],
        vec!["solve", "--instance", inst, "--algorithm", "aco", "--rho", "1.5"],
        vec!["solve", "--instance", "/nonexistent.tsp", "--algorithm", "aco"],
        vec!["solve", "--instance", inst],
        vec!["solve", "--instance", inst, "--algorithm", "aco", "--distance", "manhattan"],
        vec!["bench", "--instances", inst, "--seeds", "x", "--out", "/tmp/never.csv"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn bench_directory_with_plot() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("inst");
    fs::create_dir(&data).unwrap();
    write_instance(&data, "a", 30, 0.0);
    write_instance(&data, "b", 24, 7.0);
    fs::write(data.join("readme.txt"), "not an instance").unwrap();
    let csv = dir.path().join("runs.csv");
    let svg = dir.path().join("plot.svg");
    let mut args = vec![
        "bench",
        "--instances",
        data.to_str().unwrap(),
        "--algorithms",
        "aco_slc,aco_kmeans",
        "--seeds",
        "1,2",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
    ];
    quick(&mut args);
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("added automatically"));

    // 2 instances x (2 requested + auto ACO) x 2 seeds
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 12);
    assert!(text.lines().next().unwrap().starts_with("instance,n,algorithm,"));
    assert!(fs::read_to_string(&svg).unwrap().contains("</svg>"));
}

#[test]
fn failed_runs_exit_1_and_keep_rows() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(dir.path(), "f", 20, 0.0);
    let seeds = dir.path().join("seeds.txt");
    fs::write(&seeds, "f\nx= 0 500\ny= 0 500\n").unwrap();
    let csv = dir.path().join("runs.csv");
    let mut args = vec![
        "bench",
        "--instances",
        inst.to_str().unwrap(),
        "--algorithms",
        "aco,aco_slc",
        "--seeds",
        "1",
        "--seeds-file",
        seeds.to_str().unwrap(),
        "--m0",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ];
    quick(&mut args);
    let out = run(&args);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains(",failed,"));
}
