mod common;

use std::process::Command;

use common::table2_path;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mall-skyline"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn query_table_is_stable() {
    let data = table2_path();
    let args = [
        "query",
        "--data",
        data.to_str().unwrap(),
        "--origin",
        "41.502744,-81.502225",
        "--algorithm",
        "sfs",
    ];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);

    let lines: Vec<&str> = first.lines().collect();
    assert!(lines[0].starts_with("Rank  Mall  Code  Distance (km)"));
    let codes: Vec<&str> = lines[1..6].iter().map(|l| l.split_whitespace().nth(2).unwrap()).collect();
    assert_eq!(codes, ["OH1", "OH3", "OH2", "OH4", "OH5"]);
    assert!(lines[6].contains("divergence: false"));
}

#[test]
fn query_accepts_southern_hemisphere_origin() {
    let data = table2_path();
    let (code, out, _) = run(&["query", "--data", data.to_str().unwrap(), "--origin", "-33.86,151.2", "--limit", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn emit_sql_prints_anti_join() {
    let (code, out, _) = run(&["emit-sql", "--dims", "distance:min,store_number:max"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("SELECT * FROM malls S WHERE NOT EXISTS (SELECT * FROM malls S1 WHERE "));
    let (_, out, _) = run(&["emit-sql", "--operator", "--facilities", "4"]);
    assert_eq!(
        out.trim_end(),
        "SELECT * FROM malls SKYLINE OF distance MIN, store_number MAX, parking_space MAX, avg_household_income MIN, population MIN, restaurants MAX"
    );
}

#[test]
fn bench_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let (code, out, _) = run(&["bench", "--n", "1000", "--d", "5", "--seed", "7", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "all algorithms agree: true");
    let written = std::fs::read_to_string(csv).unwrap();
    assert_eq!(written.lines().count(), 5);
}

#[test]
fn gen_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("malls.csv");
    let (code, _, _) = run(&["gen", "--n", "90", "--seed", "42", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["validate", "--data", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("90 valid rows, 0 errors"));
}

#[test]
fn validate_reports_bad_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let mut text = std::fs::read_to_string(table2_path()).unwrap();
    text.push_str("S6,OH6,41.5,-81.5,10,10,0,50000,90000,\"[1,2]\",0.3\n");
    text.push_str("S7,OH1,41.5,-81.5,10,10,0,50000,90000,\"[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]\",0.3\n");
    std::fs::write(&path, text).unwrap();
    let (code, out, err) = run(&["validate", "--data", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("5 valid rows, 2 errors"));
    assert!(err.contains("row 6: facilities has 2 entries"));
    assert!(err.contains("row 7: invalid field `Code`"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["nope"]).0, 2);
    assert_eq!(run(&["bench", "--unknown"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}
