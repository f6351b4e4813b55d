use std::fs;
use std::process::{Command, Output};

fn rings(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rings")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_matches_table() {
    let out = rings(&["count", "--N", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "52377\n");
}

#[test]
fn enumerate_three() {
    let out = rings(&["enumerate", "--n", "3"]);
    assert_eq!(stdout(&out), "2,2,1\n2,1,1\n");
}

#[test]
fn laplacian_csv_rows_sum_to_zero() {
    let out = rings(&["laplacian", "--necklace", "2,1", "--m", "4", "--out", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<i64>> =
        text.lines().map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.len() == 8 && r.iter().sum::<i64>() == 0));
}

#[test]
fn charpoly_of_pursuit() {
    // (λ - 1)^4 - 1
    let out = rings(&["charpoly", "--necklace", "1", "--m", "4"]);
    assert_eq!(stdout(&out), "0,-4,6,-4,1\n");
}

#[test]
fn cassini_curve_triples() {
    let out = rings(&["curve", "--necklace", "2,1", "--format", "poly"]);
    assert!(out.status.success());
    let triples: Vec<(i64, u32, u32)> = stdout(&out)
        .lines()
        .map(|l| {
            let v: Vec<&str> = l.split(' ').collect();
            (v[0].parse().unwrap(), v[1].parse().unwrap(), v[2].parse().unwrap())
        })
        .collect();
    let mut keys: Vec<(u32, u32)> = triples.iter().map(|t| (t.1, t.2)).collect();
    let sorted = {
        let mut k = keys.clone();
        k.sort();
        k
    };
    assert_eq!(keys, sorted);
    keys.dedup();
    assert_eq!(keys.len(), triples.len());
    // |λ² - 3λ + 1| = 1 at λ = 0 and λ = 3 but not at λ = 1/2.
    let f = |x: f64| triples.iter().filter(|t| t.2 == 0).map(|t| t.0 as f64 * x.powi(t.1 as i32)).sum::<f64>();
    assert_eq!(f(0.0), 0.0);
    assert_eq!(f(3.0), 0.0);
    assert_ne!(f(0.5), 0.0);
}

#[test]
fn check_reports_the_size_threshold() {
    let out = rings(&["check", "--necklace", "1", "--m", "7", "--a", "0,0,1", "--b", "1,3.4", "--r", "0.15"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("NO CONSENSUS (N=7 exceeds threshold)"), "{}", stdout(&out));
    let out = rings(&["check", "--necklace", "1", "--m", "6", "--a", "0,0,1", "--b", "1,3.4", "--r", "0.15"]);
    assert_eq!(stdout(&out), "CONSENSUS (N=6)\n");
}

#[test]
fn omega_point_and_critical_gain() {
    let out = rings(&["omega", "--a", "0,2,1", "--b", "1", "--lambda", "-1,1"]);
    assert!(stdout(&out).starts_with("inside"));
    let out = rings(&["critical", "--curve", "cassini", "--gamma", "1"]);
    let r: f64 = stdout(&out).trim().parse().unwrap();
    assert!((r - 7.0 / 6.0).abs() < 1e-3, "{r}");
}

#[test]
fn simulate_writes_csv_and_echoes_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = rings(&[
        "simulate", "--necklace", "1", "--m", "4", "--a", "0,2,1", "--b", "1", "--r", "1", "--T", "60", "--h", "0.001",
        "--seed", "7", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("seed: 7") && err.contains("verdict: consensus"), "{err}");
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,disagreement"));
    assert_eq!(lines.count(), 60_001);
}

#[test]
fn output_is_deterministic() {
    let args = ["simulate", "--necklace", "2,1", "--m", "3", "--gamma", "1", "--r", "0.5", "--T", "1", "--seed", "4"];
    assert_eq!(rings(&args).stdout, rings(&args).stdout);
    let svg = ["curve", "--necklace", "2,1,1", "--out", "svg"];
    assert_eq!(rings(&svg).stdout, rings(&svg).stdout);
}

#[test]
fn csv_round_trips_into_plot() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    assert!(rings(&["locus", "--necklace", "2,1", "--m", "4", "--reflect", "0.5", "--out", &p("pts.csv")]).status.success());
    assert!(rings(&["omega", "--gamma", "1", "--out", &p("bd.csv")]).status.success());
    assert!(rings(&["curve", "--necklace", "1", "--out", &p("circle.csv")]).status.success());
    assert!(rings(&["drop", "--out", &p("drop.csv")]).status.success());
    let out = rings(&[
        "plot", "--points", &p("pts.csv"), "--boundary", &p("bd.csv"), "--boundary", &p("circle.csv"), "--boundary",
        &p("drop.csv"), "--out", &p("fig.svg"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = fs::read_to_string(p("fig.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 8);
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn config_file_replaces_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"command": "check", "necklace": "1", "m": 7, "a": [0, 0, 1], "b": [1, 3.4], "r": 0.15}"#).unwrap();
    let out = rings(&["--config", cfg.to_str().unwrap(), "--out", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["consensus"], false);
    assert_eq!(v["threshold_nodes"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(rings(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rings(&["check", "--necklace", "3,1", "--gamma", "1", "--r", "1"]).status.code(), Some(1));
    assert_eq!(rings(&["omega", "--a", "0,2,x", "--lambda", "-1,1"]).status.code(), Some(1));
    assert_eq!(rings(&["count", "--N", "20", "--out", "/nonexistent/dir/out.txt"]).status.code(), Some(1));
    assert_eq!(rings(&["count", "--N", "5", "--out", "svg"]).status.code(), Some(1));
    assert_eq!(rings(&["--help"]).status.code(), Some(0));
}
