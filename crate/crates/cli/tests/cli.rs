use std::process::{Command, Output};

use epiattr_core::{is_attractor, ConformanceReport, StatusTag};
use serde_json::Value;

fn epiattr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epiattr"))
        .args(args)
        .env_remove("EPIATTR_MAX_PREFIX_LEN")
        .env_remove("EPIATTR_MAX_LEVELS")
        .env_remove("EPIATTR_ORACLE_MAX_LEN")
        .env_remove("EPIATTR_ORACLE_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn closure_prints_palindrome() {
    let o = epiattr(&["closure", "000", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0001000\n");
    let o = epiattr(&["closure", "01101", "0", "--json"]);
    assert_eq!(json(&o)["closure"], "011010110");
}

#[test]
fn verify_exit_codes() {
    let o = epiattr(&["verify", "010010", "1,3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("0[1]0[0]10\n"));

    let o = epiattr(&["--json", "verify", "010010", "1"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "failed");
    assert_eq!(v["witness"], "0");
    assert_eq!(v["provenance"], "input");

    let o = epiattr(&["verify", "010010", "0,1", "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["witness"], "00");
    assert_eq!(json(&o)["occurrences"], serde_json::json!([[2, 3]]));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["verify", "010010"],
        &["verify", "010010", "1,x"],
        &["verify", "010010", "9"],
        &["tower", "--directive", "01", "--levels", "3"],
        &["attractor-factor", "--directive", ":01"],
        &[
            "attractor-factor",
            "--directive",
            ":01",
            "--word",
            "10",
            "--start",
            "1",
        ],
        &["closure", "01", "ab"],
        &["prefix", "--directive", "01:", "--length", "10"],
    ] {
        assert_eq!(code(&epiattr(args)), 2, "{args:?}");
    }
}

#[test]
fn caps_exit_3() {
    let o = epiattr(&[
        "prefix",
        "--directive",
        ":01",
        "--length",
        "100",
        "--max-prefix-len",
        "50",
    ]);
    assert_eq!(code(&o), 3);
    let o = epiattr(&[
        "tower",
        "--directive",
        ":01",
        "--levels",
        "10",
        "--max-levels",
        "5",
    ]);
    assert_eq!(code(&o), 3);
    let o = epiattr(&[
        "attractor-factor",
        "--directive",
        ":01",
        "--word",
        "11",
        "--max-level",
        "8",
    ]);
    assert_eq!(code(&o), 3);
    let o = epiattr(&["minimal", &"01".repeat(20)]);
    assert_eq!(code(&o), 3);
    let o = epiattr(&["minimal", "001011", "--budget", "2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn caps_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_epiattr"))
        .args(["prefix", "--directive", ":01", "--length", "100"])
        .env("EPIATTR_MAX_PREFIX_LEN", "50")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_epiattr"))
        .args([
            "prefix",
            "--directive",
            ":01",
            "--length",
            "100",
            "--max-prefix-len",
            "1000",
        ])
        .env("EPIATTR_MAX_PREFIX_LEN", "50")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn tower_and_prefix() {
    let o = epiattr(&["prefix", "--directive", ":01", "--length", "19"]);
    assert_eq!(stdout(&o), "0100101001001010010\n");
    let o = epiattr(&["--json", "tower", "--directive", ":012", "--levels", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), golden("tower_tribonacci_4.json"));
}

#[test]
fn normalize_check_warns() {
    let o = epiattr(&[
        "tower",
        "--directive",
        ":10",
        "--levels",
        "3",
        "--normalize-check",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = epiattr(&[
        "tower",
        "--directive",
        ":01",
        "--levels",
        "3",
        "--normalize-check",
    ]);
    assert!(o.stderr.is_empty());
}

#[test]
fn attractor_prefix_tribonacci() {
    let o = epiattr(&[
        "attractor-prefix",
        "--directive",
        ":012",
        "--level",
        "5",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["positions"], serde_json::json!([3, 7, 14]));
    assert_eq!(v["status"], "verified");
    let o = epiattr(&["attractor-prefix", "--directive", ":012", "--level", "3"]);
    assert!(stdout(&o).starts_with("[0][1]0[2]010\n"));
}

#[test]
fn attractor_factor_reports_failed_candidate() {
    let o = epiattr(&[
        "--json",
        "attractor-factor",
        "--directive",
        ":01",
        "--word",
        "1001",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), golden("factor_1001.json"));

    // 1001 starts at 1 in the Fibonacci word
    let o = epiattr(&[
        "--json",
        "attractor-factor",
        "--directive",
        ":01",
        "--start",
        "1",
        "--len",
        "4",
    ]);
    assert_eq!(stdout(&o), golden("factor_1001.json"));

    let o = epiattr(&["attractor-factor", "--directive", ":012", "--word", "2010"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("[2][0][1]0\n"));
}

#[test]
fn minimal_search() {
    let o = epiattr(&["--json", "minimal", "010010"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["size"], 2);
    assert_eq!(v["positions"], serde_json::json!([1, 2]));
    let o = epiattr(&["minimal", "001011", "--max-size", "2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn profile_table() {
    let o = epiattr(&[
        "profile",
        "--directive",
        ":012",
        "--upto",
        "5",
        "--check-oracle",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("n\ts(n)\n1\t1\n2\t2\n3\t2\n4\t3\n5\t3\n"));
    let o = epiattr(&["--json", "profile", "--directive", ":01", "--upto", "4"]);
    let v = json(&o);
    assert_eq!(v["constant_from"], 2);
    assert_eq!(v["entries"][3], serde_json::json!({"n": 4, "s": 2}));
}

#[test]
fn sweep_json_is_deterministic_and_reverifies() {
    let args = [
        "--json",
        "sweep",
        "--directive",
        ":012",
        "--level",
        "3",
        "--max-len",
        "7",
    ];
    let first = epiattr(&args);
    let second = epiattr(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first), golden("sweep_tribonacci_3.json"));
    // failing candidates are present, so the exit code is 1
    assert_eq!(code(&first), 1);

    let report: ConformanceReport = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report.summary.factors, 21);
    assert_eq!(report.summary.oracle_confirmed, 21);
    for row in &report.rows {
        let pass = is_attractor(&row.row.word, &row.row.positions)
            .unwrap()
            .is_pass();
        assert_eq!(
            pass,
            row.row.status == StatusTag::Verified,
            "{}",
            row.row.word
        );
    }
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, stdout(&first));
}

#[test]
fn unary_sweep_succeeds() {
    let o = epiattr(&[
        "sweep",
        "--directive",
        ":0",
        "--level",
        "3",
        "--max-len",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).contains("3 factors, 3 verified, 0 failed"),
        "{}",
        stdout(&o)
    );
}
