use std::process::{Command, Output};

use serde_json::Value;

fn qmckay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmckay"))
        .args(args)
        .env_remove("QMCKAY_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qmckay(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bps_json_lists_the_five_states() {
    let v = json(&["bps", "--group", "D5", "--format", "json"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 5);
    let find = |a: i64, b: i64| {
        entries
            .iter()
            .find(|e| e["class"] == serde_json::json!([a, b]))
            .unwrap()["n0"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(find(1, 0), "1");
    assert_eq!(find(1, 1), "2");
    assert_eq!(find(0, 1), "4");
    assert_eq!(find(0, 2), "1/2");
    assert_eq!(find(1, 2), "1");
}

#[test]
fn aliases_agree() {
    assert_eq!(
        qmckay(&["bps", "-g", "D5"]).stdout,
        qmckay(&["bps", "-g", "D:3"]).stdout
    );
    assert_eq!(
        qmckay(&["roots", "-g", "A3"]).stdout,
        qmckay(&["roots", "-g", "C:2"]).stdout
    );
}

#[test]
fn partition_degree_zero_is_one() {
    let out = qmckay(&["partition", "--group", "D5", "--max-q-degree", "0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1");
}

#[test]
fn verify_e8() {
    let out = qmckay(&["verify", "--group", "E8", "--max-q-degree", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8(out.stdout).unwrap().contains("all checks passed"));
}

#[test]
fn exit_code_contract() {
    assert_eq!(qmckay(&["bps", "--group", "A4"]).status.code(), Some(3));
    assert_eq!(qmckay(&["bps", "--group", "C:1"]).status.code(), Some(3));
    assert_eq!(qmckay(&["bps", "--group", "X:9"]).status.code(), Some(2));
    assert_eq!(qmckay(&["bps", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(qmckay(&["partition", "--lambda-order", "-2"]).status.code(), Some(2));
    assert_eq!(qmckay(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for cmd in [
        "roots",
        "group",
        "bps",
        "gw",
        "partition",
        "dt",
        "intersect",
        "crc",
        "verify",
    ] {
        for format in ["json", "csv", "text"] {
            let args = [
                cmd,
                "--group",
                "O",
                "--max-q-degree",
                "2",
                "--q-series-degree",
                "2",
                "--format",
                format,
            ];
            let a = qmckay(&args);
            let b = qmckay(&args);
            assert!(
                a.status.success(),
                "{cmd} {format}: {}",
                String::from_utf8_lossy(&a.stderr)
            );
            assert!(!a.stdout.is_empty());
            assert_eq!(a.stdout, b.stdout, "{cmd} {format}");
        }
    }
}

#[test]
fn csv_quotes_class_vectors() {
    let out = qmckay(&["bps", "--group", "D5", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().any(|r| &r[0] == "0,2" && &r[1] == "1/2"));
}

#[test]
fn dt_is_tagged_and_output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("qmckay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dt.json");
    let out = qmckay(&[
        "dt",
        "-g",
        "D5",
        "--max-q-degree",
        "2",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["tag"], "reduced DT prediction");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn crc_reports_b_series_and_consistency() {
    let v = json(&["crc", "-g", "D5", "--degree", "4", "--format", "json"]);
    assert_eq!(v["consistency"]["passed"], true);
    let b = v["b_series"].as_array().unwrap();
    assert_eq!(b.len(), 8);
    assert!(b[0].as_str().unwrap().starts_with("1"));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmckay"))
        .args(["crc", "-g", "D5", "--degree", "3"])
        .env("QMCKAY_PRECISION", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
