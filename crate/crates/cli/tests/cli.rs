use std::path::PathBuf;
use std::process::{Command, Output};

use coprime_compositions::bounds::ReportRow;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coprimes"))
        .args(args)
        .env_remove("COPRIMES_TABLE_LIMIT")
        .output()
        .expect("run binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coprimes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn count_json_line() {
    let out = run(&["count", "--family", "A", "-k", "2", "-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["family"], "A");
    assert_eq!(v["value"], "3");
    assert_eq!(v["method"], "moebius");
}

#[test]
fn count_methods_agree() {
    for method in ["oracle", "moebius", "per-head"] {
        let out = run(&["--format", "plain", "count", "--family", "A", "-k", "3", "-n", "30", "--method", method]);
        assert_eq!(stdout(&out).trim(), "1220", "{method}");
    }
    let out = run(&["--format", "plain", "count", "--family", "B", "-k", "2", "-n", "10"]);
    assert_eq!(stdout(&out).trim(), "4");
    let out = run(&["--format", "plain", "count", "--family", "K", "-k", "3", "-n", "40"]);
    assert_eq!(stdout(&out).trim(), "9139");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "Q", "-k", "2", "-n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "Kd", "-k", "2", "-n", "10", "-d", "4"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "U", "-k", "2", "-n", "3", "--method", "oracle"]).status.code(), Some(2));
    assert_eq!(
        run(&["count", "--family", "A", "-k", "3", "-n", "100000", "--method", "oracle"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["sweep", "--family", "A", "-k", "2", "--n-from", "2", "--n-to", "9", "--step", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn unreachable_width_reports_partial_enclosure() {
    let out = run(&["constants", "--kind", "C", "-k", "3", "--width", "1e-12", "--max-cutoff", "100000"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["cutoff_P"], 100000);
    assert!(v["lo"].as_str().unwrap().starts_with("0.381"));
}

#[test]
fn empty_sweep_prints_header_only() {
    let out = run(&["sweep", "--family", "A", "-k", "2", "--n-from", "10", "--n-to", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("family,k,n,"));
}

#[test]
fn sweep_rows_parse_back() {
    let out = run(&["sweep", "--family", "A", "-k", "2", "--n-from", "50", "--n-to", "1000", "--step", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<ReportRow> = text.lines().skip(1).map(|l| ReportRow::from_csv_row(l).unwrap()).collect();
    assert_eq!(rows.len(), 20);
    for (line, row) in text.lines().skip(1).zip(&rows) {
        assert_eq!(row.to_csv_row(), line);
    }

    let out = run(&["sweep", "--family", "B", "-k", "3", "--n-from", "30", "--n-to", "300", "--step", "30"]);
    assert_eq!(stdout(&out).lines().count(), 11);
}

#[test]
fn sweep_json_lines() {
    let out = run(&["--format", "json", "sweep", "--family", "B", "-k", "2", "--n-from", "10", "--n-to", "14"]);
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["n"], 10);
}

#[test]
fn config_file_layering() {
    let path = scratch("layering.toml");
    std::fs::write(&path, "format = \"plain\"\n[budget]\nenumeration = 10\n").unwrap();
    let cfg = path.to_str().unwrap();

    let out = run(&["--config", cfg, "count", "--family", "B", "-k", "2", "-n", "10", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(0), "C(9, 1) = 9 fits the budget");
    assert_eq!(stdout(&out).trim(), "4");

    let out = run(&["--config", cfg, "count", "--family", "B", "-k", "3", "-n", "10", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(3), "C(9, 2) = 36 exceeds the file budget");

    let out = run(&[
        "--config", cfg, "count", "--family", "B", "-k", "3", "-n", "10", "--method", "oracle",
        "--enumeration-budget", "100",
    ]);
    assert_eq!(out.status.code(), Some(0), "flag overrides file");

    let out = run(&["--config", cfg, "--format", "json", "count", "--family", "B", "-k", "2", "-n", "10"]);
    assert!(stdout(&out).trim().starts_with('{'));

    std::fs::write(&path, "colour = 1\n").unwrap();
    assert_eq!(run(&["--config", cfg, "count", "--family", "A", "-k", "1", "-n", "5"]).status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = scratch("count.txt");
    let out = run(&["--output", path.to_str().unwrap(), "--format", "plain", "count", "--family", "A", "-k", "1", "-n", "360"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "96");
}
