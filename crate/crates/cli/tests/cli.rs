//! End-to-end tests of the binary: wire formats, exit codes, determinism.

use std::process::{Command, Output};

fn quintorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quintorb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn phi_of_ones() {
    let out = quintorb(&["phi", "1", "1", "1", "1", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3 4 4\n");
}

#[test]
fn phi_accepts_rationals() {
    let out = quintorb(&["phi", "1/2", "3", "5/4", "2", "7/6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.trim().split(' ').count(), 3);
}

#[test]
fn invariant_values() {
    let out = quintorb(&["invariant", "2", "2", "2", "2", "1"]);
    assert_eq!(stdout(&out), "-15/4\n");
    let out = quintorb(&["invariant", "2", "3", "5", "1", "1"]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn decide_member_with_witness() {
    let out = quintorb(&[
        "decide",
        "--epsilon",
        "1",
        "2",
        "3",
        "5",
        "1",
        "1",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["witness"]["n"], "1");
    assert_eq!(v["witness"]["word"], "");
}

#[test]
fn decide_non_member_exit_code() {
    let out = quintorb(&[
        "decide",
        "--epsilon",
        "1",
        "1",
        "2",
        "3",
        "7",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["member"], false);
    assert_eq!(v["clauses"]["t_zero"], true);
    assert_eq!(v["clauses"]["phi_integral"], false);
    assert!(v["witness"].is_null());
}

#[test]
fn decide_rejects_bad_input() {
    // fifth coordinate must equal epsilon
    let out = quintorb(&["decide", "--epsilon", "2", "1", "1", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed numbers
    let out = quintorb(&["decide", "--epsilon", "1", "x", "1", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // wrong arity
    let out = quintorb(&["decide", "--epsilon", "1", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_replays_alpha_image() {
    let out = quintorb(&["witness", "--epsilon", "1", "1", "2", "1", "1", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "word: a\nn: 0\n");
    let out = quintorb(&["witness", "--epsilon", "1", "1", "2", "3", "7", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pell_and_conic() {
    let out = quintorb(&["pell", "--d", "77"]);
    assert_eq!(stdout(&out), "9 1\n");
    let out = quintorb(&["pell", "--d", "49"]);
    assert_eq!(out.status.code(), Some(2));

    let out = quintorb(&[
        "conic",
        "--a",
        "1",
        "--b",
        "-9",
        "--c",
        "1",
        "--e",
        "-112",
        "--fundamentals",
    ]);
    assert_eq!(stdout(&out), "32 4\n");

    let out = quintorb(&[
        "conic", "--a", "1", "--b", "-9", "--c", "1", "--e", "-112", "--range", "0", "0", "--json",
    ]);
    assert_eq!(stdout(&out).trim(), r#"[["-32","-4"],["32","4"]]"#);
}

#[test]
fn triples_commands() {
    let out = quintorb(&["triples", "enumerate", "--bound", "13", "--json"]);
    assert_eq!(
        stdout(&out).trim(),
        r#"[["3","4","4"],["3","4","8"],["4","4","13"]]"#
    );
    let out = quintorb(&["triples", "witness", "4", "4", "13"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "~Ba\n");
    let out = quintorb(&["triples", "witness", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn h0_elements_wire_format() {
    let out = quintorb(&["h0", "--epsilon", "2", "--range", "0", "2", "--json"]);
    assert_eq!(stdout(&out).trim(), r#"[["2","2"],["10","2"],["82","10"]]"#);
}

#[test]
fn orbit_and_oracle_agree_at_small_bound() {
    let orbit = quintorb(&["orbit", "--epsilon", "1", "--bound", "60"]);
    let orbit_lines: Vec<String> = stdout(&orbit).lines().map(String::from).collect();
    assert!(orbit_lines.contains(&"2 3 5 1 1".to_string()));
    // every orbit element is found by the oracle in the same box
    let oracle = quintorb(&["oracle", "quintuples", "--epsilon", "1", "--bound", "60"]);
    let oracle_lines: Vec<String> = stdout(&oracle).lines().map(String::from).collect();
    for line in &orbit_lines {
        assert!(oracle_lines.contains(line), "missing {line}");
    }
    assert!(
        oracle_lines.len() > orbit_lines.len(),
        "criterion is strict"
    );
}

#[test]
fn mutate_roundtrip_via_file() {
    let dir = std::env::temp_dir().join("quintorb-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b.json");
    let out = quintorb(&["mutate", "--k", "1", "--json"]);
    std::fs::write(&path, stdout(&out)).unwrap();
    let back = quintorb(&[
        "mutate",
        "--k",
        "1",
        "--json",
        "--matrix",
        path.to_str().unwrap(),
    ]);
    let original = quintorb(&["mutate", "--k", "2", "--json"]); // just to have a second sample
    assert!(back.status.success() && original.status.success());
    // mutating twice in the same direction returns the standard matrix
    let standard = r#"[["0","-2","1","1"],["2","0","-1","-1"],["-1","1","0","1"],["-1","1","-1","0"],["0","0","1","-1"]]"#;
    assert_eq!(stdout(&back).trim(), standard);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["orbit", "--epsilon", "2", "--bound", "100", "--json"],
        vec![
            "decide",
            "--epsilon",
            "1",
            "2",
            "3",
            "5",
            "1",
            "1",
            "--json",
        ],
        vec!["selftest"],
    ] {
        let first = quintorb(&args);
        let second = quintorb(&args);
        assert_eq!(stdout(&first), stdout(&second), "args: {args:?}");
    }
}

#[test]
fn selftest_passes() {
    let out = quintorb(&["selftest"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("0 failed"));
    assert!(!text.contains("FAIL"));
}
