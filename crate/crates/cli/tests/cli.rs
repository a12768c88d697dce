use std::process::{Command, Output};

use serde_json::Value;

fn bs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bs"))
        .args(args)
        .env_remove("BS_MAX_STATES")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = bs(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

#[test]
fn tables_match_the_golden_file_byte_for_byte() {
    let out = bs(&["tables", "--max-size", "5", "--max-power", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = include_str!("golden/tables_max5_k3.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn orbit_size() {
    let (v, code) = json(&["orbit", "--necklace", "BWW", "--power", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], "25");
    assert_eq!(v["status"], "ok");
}

#[test]
fn dseries_sums_to_the_orbit_size() {
    let (v, _) = json(&["dseries", "--necklace", "BBW", "--power", "2"]);
    assert_eq!(v["size"], "35");
    let total: i64 = v["d_series"]["coeffs"]
        .as_object()
        .unwrap()
        .values()
        .map(|c| c.as_str().unwrap().parse::<i64>().unwrap())
        .sum();
    assert_eq!(total, 35);
}

#[test]
fn hlimit_matches_the_closed_form() {
    let (v, code) = json(&["hlimit", "--necklace", "BWWW", "--coeffs", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["closed"], true);
    assert_eq!(
        v["H_text"],
        "(-x^6 - 7x^5 + 11x^4 + 5x^3 - 2x^2 - 2x - 4) / (6x^4 + 4x^3 + x^2 - 1)"
    );
    assert_eq!(v["series"], serde_json::json!(["4", "2", "6", "13"]));
}

#[test]
fn non_closing_forest_exits_2() {
    let (v, code) = json(&["hlimit", "--necklace", "W"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "non-closing");
    assert_eq!(v["closed"], false);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["orbit", "--necklace", "BXW"][..],
        &["orbit", "--necklace", "BWBW"],
        &["orbit"],
        &["frobnicate"],
    ] {
        let out = bs(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let err = String::from_utf8(bs(&["hlimit", "--necklace", "BWBW"]).stderr).unwrap();
    assert!(err.contains("not primitive"));
}

#[test]
fn capped_orbits_exit_2() {
    let (v, code) = json(&["orbit", "--necklace", "BWWW", "--power", "3", "--max-states", "1000"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "capped");
}

#[test]
fn state_cap_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bs"))
        .args(["orbit", "--necklace", "BWWW", "--power", "3"])
        .env("BS_MAX_STATES", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_commands_pass() {
    for args in [
        &["verify", "thm13", "--max-k", "10"][..],
        &["verify", "thm12"],
        &["verify", "conj11", "--max-size", "6"],
        &["verify", "conj64", "--max-size", "6"],
        &["verify", "lemma216", "--necklace", "BWW", "--power", "2"],
        &["verify", "brandt", "--max-size", "6"],
    ] {
        let (v, code) = json(args);
        assert_eq!(v["status"], "ok", "{args:?}");
        assert_eq!(code, 0);
    }
}

#[test]
fn ratio_probe_and_fuse_table() {
    let (v, _) = json(&["cratio", "--necklace", "BBWW", "--max-k", "2"]);
    assert_eq!(v["sizes"], serde_json::json!(["15", "150"]));
    assert_eq!(v["ratio"], "10");
    let out = bs(&["ufuse", "--max-k", "3", "--tsv"]);
    let tsv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(tsv.lines().nth(4), Some("3\t4x^3 + 5x^2 + 3x + 1\t8 + 8x^-1 + 4x^-2 + x^-3"));
}

#[test]
fn hseries_reports_the_stabilizing_power() {
    let (v, _) = json(&["hseries", "--necklace", "BWW", "--coeffs", "5"]);
    assert_eq!(v["coeffs"], serde_json::json!(["3", "1", "2", "3", "5", "7"]));
    assert!(v["stabilized_at_power"].as_u64().unwrap() <= 5);
}

#[test]
fn output_is_deterministic_and_timing_is_opt_in() {
    let a = bs(&["verify", "thm12"]).stdout;
    let b = bs(&["verify", "thm12"]).stdout;
    assert_eq!(a, b);
    assert!(!String::from_utf8(a).unwrap().contains("elapsed"));
    let (v, _) = json(&["verify", "thm12", "--timing"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("bs-out-{}.tsv", std::process::id()));
    let out = bs(&["tables", "--max-size", "4", "--max-power", "2", "--tsv", "--out", path.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().next(), Some("necklace\tc_P\tformula\tverified_k\tk=1\tk=2"));
    assert_eq!(text.lines().nth(1), Some("BWWW\t15\t15·15^(k-1)\t2\t15\t225"));
}
