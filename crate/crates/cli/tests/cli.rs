use std::process::{Command, Output};

use serde_json::Value;

fn rankmetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankmetric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn bounds_report() {
    let out = rankmetric(&[
        "bounds", "--q", "2", "--m", "4", "--n", "4", "--d", "3", "--tau", "2",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["bound1"]["exact_ratio"], "35");
    assert_eq!(v["bound2"]["anticode_sum"], "36");
    assert_eq!(v["bound2"]["four_sum"], "65");
    assert_eq!(v["johnson"]["threshold"], 2);
}

#[test]
fn bounds_with_k_and_csv() {
    let out = rankmetric(&[
        "bounds", "--q", "2", "--m", "4", "--n", "4", "--k", "2", "--tau", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# rankmetric-bounds schema v1"));
    assert_eq!(lines.next(), Some("quantity,value"));
    assert!(text.lines().any(|l| l == "bound1.exact_ratio,35"));
}

#[test]
fn precondition_exit_code() {
    let out = rankmetric(&[
        "bounds", "--q", "2", "--m", "4", "--n", "4", "--d", "3", "--tau", "9",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = rankmetric(&[
        "construct",
        "crc-theorem8",
        "--q",
        "2",
        "--m",
        "4",
        "--n",
        "4",
        "--tau",
        "3",
        "--d",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_exit_codes() {
    assert_eq!(rankmetric(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rankmetric(&["bounds", "--q", "2"]).status.code(), Some(1));
    assert_eq!(rankmetric(&["--help"]).status.code(), Some(0));
}

#[test]
fn witness_bound3_file() {
    let dir = std::env::temp_dir().join(format!("rankmetric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let out = rankmetric(&[
        "witness",
        "bound3",
        "--q",
        "2",
        "--m",
        "6",
        "--n",
        "6",
        "--d",
        "3",
        "--tau",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["claimed_size"], "16");
    assert_eq!(v["codewords"].as_array().unwrap().len(), 16);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn witness_bound1_and_alt() {
    let out = rankmetric(&[
        "witness", "bound1", "--q", "2", "--m", "4", "--n", "4", "--k", "2", "--tau", "2",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["list_size"], 35);
    assert_eq!(v["verified"], true);

    let out = rankmetric(&[
        "witness", "alt", "--q", "2", "--m", "4", "--n", "4", "--d", "3", "--tau", "2",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    let counts: u64 = v["coset_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .sum();
    assert_eq!(counts, 525);
    assert!(v["list_size"].as_u64().unwrap() >= 33);

    let out = rankmetric(&[
        "witness", "bound1", "--q", "2", "--m", "4", "--n", "3", "--k", "1", "--tau", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_reports_are_reproducible() {
    let args = [
        "oracle",
        "max",
        "--q",
        "2",
        "--m",
        "3",
        "--n",
        "3",
        "--k",
        "1",
        "--tau",
        "2",
        "--mode",
        "random",
        "--trials",
        "50",
        "--seed",
        "9",
        "--no-timing",
    ];
    let a = rankmetric(&args);
    let b = rankmetric(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("elapsed_ms").is_none());

    let out = rankmetric(&[
        "oracle", "max", "--q", "2", "--m", "2", "--n", "2", "--k", "1", "--tau", "1", "--jobs",
        "2",
    ]);
    let v = json(&out);
    assert_eq!(v["words_scanned"], 16);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn oracle_list() {
    let out = rankmetric(&[
        "oracle", "list", "--q", "2", "--m", "4", "--n", "4", "--k", "2", "--tau", "0", "--word",
        "0,0,0,0",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["size"], 1);
    let out = rankmetric(&[
        "oracle", "list", "--q", "2", "--m", "4", "--n", "4", "--k", "2", "--tau", "0", "--word",
        "0,0,99,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constructions() {
    let out = rankmetric(&[
        "construct",
        "cdc",
        "--q",
        "2",
        "--n",
        "6",
        "--tau",
        "2",
        "--d",
        "4",
    ]);
    assert_eq!(json(&out)["size"], 16);
    let out = rankmetric(&[
        "construct",
        "cdc-odd",
        "--q",
        "2",
        "--n",
        "6",
        "--tau",
        "2",
        "--d",
        "3",
        "--variant",
        "minus",
    ]);
    assert_eq!(json(&out)["size"], 256);
    let out = rankmetric(&[
        "construct",
        "crc",
        "--q",
        "2",
        "--m",
        "4",
        "--n",
        "4",
        "--tau",
        "2",
        "--d-m",
        "4",
        "--d-n",
        "4",
    ]);
    let v = json(&out);
    assert_eq!(v["size"], 4);
    assert_eq!(v["min_rank_distance_at_most"], 4);
    let out = rankmetric(&[
        "construct",
        "crc-theorem8",
        "--q",
        "2",
        "--m",
        "6",
        "--n",
        "6",
        "--tau",
        "2",
        "--d",
        "3",
    ]);
    assert_eq!(json(&out)["size"], 16);
    let out = rankmetric(&[
        "construct",
        "cdc",
        "--q",
        "2",
        "--n",
        "5",
        "--tau",
        "3",
        "--d",
        "4",
        "--untransposed",
    ]);
    assert_eq!(json(&out)["size"], 8);
}

#[test]
fn regions_table() {
    let out = rankmetric(&["regions", "--grid", "0.05"]);
    assert!(out.status.success());
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 21);
    let row = rows.iter().find(|r| r["delta"] == "3/4").unwrap();
    assert!((row["tau_j"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let out = rankmetric(&["regions", "--grid", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_selected_criteria() {
    let out = rankmetric(&["verify", "--criterion", "1,2,12", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(2).all(|l| l.contains(",true,")));
    let out = rankmetric(&["verify", "--criterion", "13"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_unavailable_is_an_error() {
    let out = rankmetric(&[
        "construct",
        "cdc",
        "--q",
        "2",
        "--n",
        "4",
        "--tau",
        "2",
        "--d",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
