use std::fs;
use std::process::{Command, Output};

fn rdperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdperm")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = rdperm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn project_deletes_large_letters() {
    assert_eq!(stdout(&["project", "--word", "3 1 4 2", "--m", "3"]), "3 1 2\n");
}

#[test]
fn record_graph_queries() {
    assert_eq!(stdout(&["graph", "--family", "R", "--dimension", "10110"]), "4\n");
    assert_eq!(stdout(&["graph", "--family", "R", "--successors", "101"]), "1011 1010 1100 1000\n");
    assert_eq!(stdout(&["graph", "--family", "R", "--level", "2"]), "10\n11\n");
}

#[test]
fn young_fibonacci_queries() {
    assert_eq!(stdout(&["graph", "--family", "YF", "--successors", "2212"]), "12212 21212 22112 2222\n");
    assert_eq!(stdout(&["graph", "--family", "YF", "--dimension", "22"]), "3\n");
    assert_eq!(stdout(&["graph", "--family", "YF", "--level", "3"]), "111\n12\n21\n");
}

#[test]
fn apex_on_one_point() {
    assert_eq!(stdout(&["sample", "--omega", "star", "--n", "1"]), "1\n");
}

#[test]
fn sampling_is_reproducible_and_echoes_the_seed() {
    let args = ["sample", "--omega", "squares;p=0.5", "--n", "12", "--count", "20", "--seed", "99"];
    let a = rdperm(&args);
    let b = rdperm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed: 99"));
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 20);
}

#[test]
fn samples_respect_the_frozen_non_records() {
    for line in stdout(&["sample", "--omega", "2,5", "--n", "8", "--count", "50", "--seed", "3"]).lines() {
        let w: Vec<u32> = line.split(' ').map(|s| s.parse().unwrap()).collect();
        let mut max = 0;
        let records: Vec<bool> = w.iter().map(|&x| x > max && { max = x; true }).collect();
        assert!(!records[2] && !records[5], "{line}");
    }
}

#[test]
fn pmf_of_an_elementary_measure() {
    assert_eq!(stdout(&["pmf", "--rho", "110"]), "1 3 2 1/2\n2 3 1 1/2\n");
}

#[test]
fn pmf_of_a_boundary_point_sums_to_one() {
    let text = stdout(&["pmf", "--omega", "2;p=0.5", "--n", "3"]);
    let total: f64 = text
        .lines()
        .map(|l| {
            let mass = l.rsplit(' ').next().unwrap();
            match mass.split_once('/') {
                Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
                None => mass.parse().unwrap(),
            }
        })
        .sum();
    assert!((total - 1.0).abs() < 1e-12, "{text}");
}

#[test]
fn classify_a_fraction_path() {
    let text = stdout(&["classify", "--frozen", "3,6", "--growth", "1/2", "--depth", "2000"]);
    assert!(text.contains("\"alpha_prefix\":[2,5]"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(rdperm(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(rdperm(&["project", "--word", "1 1", "--m", "1"]).status.code(), Some(2));
    assert_eq!(rdperm(&["pmf", "--rho", "1000000000", "--budget", "1000"]).status.code(), Some(3));
}

#[test]
fn experiment_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    let csv = dir.path().join("out.csv");
    fs::write(
        &config,
        r#"{"experiment": "record_growth", "omega": {"kind": "star"}, "sizes": [10, 100], "replicates": 4, "seed": 5}"#,
    )
    .unwrap();
    let out = rdperm(&["experiment", "--config", config.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("experiment,omega,replicate,n,statistic,value,seed\n"), "{text}");
    assert_eq!(text.lines().count(), 1 + 8);

    let seq = rdperm(&["experiment", "--config", config.to_str().unwrap(), "--output", "-", "--sequential"]);
    assert_eq!(String::from_utf8(seq.stdout).unwrap(), text);
}
