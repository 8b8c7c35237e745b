use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feedalloc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(o: &Output, key: &str) -> String {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().to_string()))
        .unwrap_or_else(|| panic!("no '{key}' in output:\n{}", stdout(o)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TIGHT: &str = "2 2 0\n1 1 1\n1 2 1.01\n2 2 1\n";

#[test]
fn gen_is_deterministic_and_complete() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = run(&["gen", "--scheme", "symmetric", "--n", "100", "--m", "1000", "--q", "0.1", "--seed", "1", "--out", s(out)]);
        assert!(o.status.success());
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    let lines = String::from_utf8(text).unwrap();
    assert_eq!(lines.lines().count(), 1 + 100 * 1000);
    assert_eq!(lines.lines().next().unwrap(), "100 1000 0.1");
}

#[test]
fn gen_from_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "g.cfg", "scheme = adversarial\nm = 10\nq = 0.5\nc = 524288\n");
    let o = run(&["gen", "--config", s(&cfg)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("10 10 524288"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["gen", "--scheme", "zigzag", "--n", "2", "--m", "2"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "t.txt", TIGHT);
    assert_eq!(run(&["solve", s(&inst), "magic"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn solve_reports_reward() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "t.txt", TIGHT);
    let out = dir.path().join("alloc.txt");
    let o = run(&["solve", s(&inst), "gb", "--out", s(&out)]);
    assert!(o.status.success());
    assert_eq!(field(&o, "expected_reward"), "1.01");
    assert_eq!(fs::read_to_string(&out).unwrap(), "2 1\n");

    let o = run(&["solve", s(&inst), "--algorithm", "bruteforce"]);
    assert_eq!(field(&o, "expected_reward"), "2");
}

#[test]
fn solve_guard_and_timeout_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let big = dir.path().join("big.txt");
    assert!(run(&["gen", "--scheme", "symmetric", "--n", "5", "--m", "6", "--out", s(&big)]).status.success());
    let o = run(&["solve", s(&big), "bruteforce"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("refused"));
    let o = run(&["solve", s(&big), "global", "--time-limit", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn flow_is_empty_when_quitting_is_likely() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("i.txt");
    assert!(run(&["gen", "--scheme", "symmetric", "--n", "10", "--m", "30", "--q", "0.6", "--out", s(&inst)]).status.success());
    let o = run(&["solve", s(&inst), "flow"]);
    assert_eq!(field(&o, "expected_reward"), "0");
    assert_eq!(field(&o, "size"), "0");
}

#[test]
fn invalid_instance_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "2 2 0.1\n1 1 1\n1 1 2\n");
    let o = run(&["solve", s(&bad), "gb"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate edge"));
}

#[test]
fn verify_checks_and_simulates() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.txt", "3 4 0.3\n1 1 2\n2 2 3\n3 4 5\n1 3 1\n");
    let alloc = write(&dir, "a.txt", "1 1\n2 2\n4 3\n");
    let o = run(&["verify", s(&inst), s(&alloc), "--simulate", "1000000", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let residual: f64 = field(&o, "residual").parse().unwrap();
    assert!(residual <= 1e-9);
    assert_eq!(field(&o, "within_3se"), "yes");

    let missing = write(&dir, "m.txt", "1 2\n");
    assert_eq!(run(&["verify", s(&inst), s(&missing)]).status.code(), Some(2));
    let reused = write(&dir, "r.txt", "1 1\n3 1\n");
    assert_eq!(run(&["verify", s(&inst), s(&reused)]).status.code(), Some(2));
    assert!(run(&["verify", s(&inst), s(&reused), "--mode", "mapping"]).status.success());
}

#[test]
fn slots_cdf_output() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "top.txt", "1 3\n2 1\n");
    let e = write(&dir, "none.txt", "");
    let o = run(&["slots-cdf", s(&a), s(&e), "--m", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "series,slot,cdf\ntop,1,0.5\ntop,2,1\ntop,3,1\ntop,4,1\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn bench_fig3_rows_and_summary() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("fig3.csv");
    let o = run(&["bench", "fig3", "--n", "6", "--m", "20", "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1 + 96);
    assert_eq!(
        rows[0].join(","),
        "dataset,scheme,n,m,q,k,algorithm,expected_reward,size,seconds,seed,status"
    );
    let summary = csv_rows(&dir.path().join("fig3.summary.csv"));
    assert_eq!(summary.len(), 1 + 32);

    let again = dir.path().join("again.csv");
    assert!(run(&["bench", "fig3", "--n", "6", "--m", "20", "--out", s(&again), "--sequential"]).status.success());
    let rewards = |rows: &[Vec<String>]| rows.iter().map(|r| r[7].clone()).collect::<Vec<_>>();
    assert_eq!(rewards(&rows), rewards(&csv_rows(&again)));
}

#[test]
fn bench_timeout_rows() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "suite.cfg", "suite = fig3\nschemes = symmetric\nalgorithms = global\nseeds = 1\nn = 5\nms = 50\n");
    let out = dir.path().join("t.csv");
    let o = run(&["bench", s(&cfg), "--time-limit", "0", "--out", s(&out)]);
    assert!(o.status.success());
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][7], "");
    assert_eq!(rows[1][11], "timeout");
}
