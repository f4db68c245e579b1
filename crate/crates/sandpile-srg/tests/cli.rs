//! Integration tests for the command-line binary: the exit-code
//! contract, JSON output shapes, and agreement between human and JSON
//! modes.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sandpile-srg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let code = out.status.code().expect("no signal");
    let value: serde_json::Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (value, code)
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn spectrum_conway_99() {
    let (json, code) = run_json(&["spectrum", "99", "14", "1", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["spectrum"]["r"], 11);
    assert_eq!(json["spectrum"]["f"], 54);
    assert_eq!(json["spectrum"]["s"], 18);
    assert_eq!(json["spectrum"]["g"], 44);
    assert_eq!(json["exponent_bound"], "198");
    // human output carries the same numbers
    let human = stdout_of(&["spectrum", "99", "14", "1", "2"]);
    assert!(human.contains("11^54"));
    assert!(human.contains("18^44"));
}

#[test]
fn spectrum_conference_notice() {
    let (json, code) = run_json(&["spectrum", "5", "2", "0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json["spectrum"]["integral"], false);
    assert_eq!(json["spectrum"]["multiplicity"], 2);
    assert_eq!(json["feasibility"]["conference"], true);
}

#[test]
fn spectrum_usage_error_exits_1() {
    let out = run(&["spectrum", "10", "3", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spectrum_infeasible_exits_2() {
    let out = run(&["spectrum", "28", "9", "0", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let (json, code) = run_json(&["spectrum", "28", "9", "0", "4"]);
    assert_eq!(code, 2);
    assert_eq!(json["feasibility"]["absolute_bound_ok"], false);
}

#[test]
fn predict_moore_graph_families() {
    let (json, code) = run_json(&["predict", "3250", "57", "0", "1", "--prime", "5"]);
    assert_eq!(code, 0);
    let cases = json["predictions"][0]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 2);
    assert_eq!(cases[0]["label"], "A");
    assert_eq!(cases[1]["label"], "B");
    let texts: Vec<&str> = cases
        .iter()
        .flat_map(|c| c["terms"].as_array().unwrap())
        .map(|t| t["multiplicity"].as_str().unwrap())
        .collect();
    assert!(texts.contains(&"1520-e0"));
    assert!(texts.contains(&"e0-2"));
}

#[test]
fn predict_collapses_at_e0() {
    let human = stdout_of(&[
        "predict", "88", "27", "6", "9", "--prime", "3", "--e0", "40",
    ]);
    assert!(human.contains("(Z/3)^7 + (Z/9)^40"), "got: {human}");
}

#[test]
fn predict_conference_exits_2() {
    let out = run(&["predict", "5", "2", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn predict_full_group() {
    let (json, code) = run_json(&["predict", "99", "14", "1", "2"]);
    assert_eq!(code, 0);
    let predictions = json["predictions"].as_array().unwrap();
    let groups: Vec<&str> = predictions
        .iter()
        .map(|p| p["group"].as_str().unwrap())
        .collect();
    assert_eq!(groups, vec!["(Z/2)^44", "(Z/9)^43", "(Z/11)^53"]);
}

#[test]
fn compute_petersen_json_and_human_agree() {
    let (json, code) = run_json(&["compute", "--family", "petersen"]);
    assert_eq!(code, 0);
    assert_eq!(json["critical_group"]["invariant_text"], "Z/2 + (Z/10)^3");
    assert_eq!(json["critical_group"]["elementary"], "(Z/2)^4 + (Z/5)^3");
    assert_eq!(json["spanning_trees"], "2000");
    assert_eq!(
        json["critical_group"]["invariant_factors"],
        serde_json::json!(["2", "10", "10", "10"])
    );
    assert_eq!(
        json["critical_group"]["divisors"],
        serde_json::json!({"2": [4], "5": [3]})
    );
    let human = stdout_of(&["compute", "--family", "petersen"]);
    assert!(human.contains("2000"));
    assert!(human.contains("Z/2 + (Z/10)^3"));
}

#[test]
fn compute_separates_sixteen_vertex_pair() {
    let (rook, _) = run_json(&["compute", "--family", "rook", "4"]);
    let (shrik, _) = run_json(&["compute", "--family", "shrikhande"]);
    assert_eq!(rook["critical_group"]["elementary"], "(Z/8)^5 + (Z/32)^4");
    assert_eq!(
        shrik["critical_group"]["elementary"],
        "Z/2 + (Z/8)^2 + (Z/16)^2 + (Z/32)^4"
    );
    // same parameters and p-rank, distinguished by the group
    assert_eq!(rook["srg"]["params"], shrik["srg"]["params"]);
    assert_eq!(rook["sylow"][0]["p_rank"], 6);
    assert_eq!(shrik["sylow"][0]["p_rank"], 6);
}

#[test]
fn compute_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.txt");
    std::fs::write(&path, "0 1 1\n1 0 1\n1 1 0\n").unwrap();
    let (json, code) = run_json(&["compute", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["spanning_trees"], "3");
    assert_eq!(json["srg"], serde_json::Value::Null);
}

#[test]
fn compute_rejects_disconnected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two_edges.txt");
    std::fs::write(&path, "0 1 0 0\n1 0 0 0\n0 0 0 1\n0 0 1 0\n").unwrap();
    let out = bin()
        .args(["compute", "--matrix", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.g6");
    std::fs::write(&path, "C~\n").unwrap();
    let (json, code) = run_json(&["compute", "--graph6", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["spanning_trees"], "16");
}

#[test]
fn verify_schlafli_all_match() {
    let (json, code) = run_json(&["verify", "--family", "schlafli"]);
    assert_eq!(code, 0);
    assert_eq!(json["ok"], true);
    let primes = json["primes"].as_array().unwrap();
    assert_eq!(primes.len(), 2);
    assert_eq!(primes[0]["p"], 2);
    assert_eq!(primes[0]["e0"], 6);
    assert_eq!(primes[0]["verdict"], "match_with_case");
    assert_eq!(primes[0]["case"], "A");
}

#[test]
fn verify_kneser_hits_case_b() {
    let (json, code) = run_json(&["verify", "--family", "kneser", "8", "2"]);
    assert_eq!(code, 0);
    let primes = json["primes"].as_array().unwrap();
    let p2 = primes.iter().find(|e| e["p"] == 2).unwrap();
    assert_eq!(p2["case"], "B");
    assert_eq!(p2["computed"], "(Z/2)^14 + (Z/8)^6");
}

#[test]
fn verify_rejects_non_srg_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path3.txt");
    std::fs::write(&path, "0 1 0\n1 0 1\n0 1 0\n").unwrap();
    let out = bin()
        .args(["verify", "--matrix", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_builtin_table() {
    let (json, code) = run_json(&["scan", "builtin"]);
    assert_eq!(code, 0);
    assert_eq!(json["summary"]["rows"], 394);
    assert_eq!(json["summary"]["spectrum_mismatches"], 0);
    assert_eq!(json["summary"]["infeasible"], 26);
}

#[test]
fn scan_file_and_row_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.txt");
    std::fs::write(&path, "10 3 0 1 2 5 5 4\n28 9 0 4\n5 2 0 1\n").unwrap();
    let (json, code) = run_json(&["scan", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows[0]["spectrum_match"], true);
    assert_eq!(rows[1]["feasibility"]["absolute_bound_ok"], false);
    assert_eq!(rows[2]["conference_multiplicity"], 2);
}

#[test]
fn scan_respects_thread_env() {
    for threads in ["1", "3", "0"] {
        let out = bin()
            .env("SANDPILE_SRG_THREADS", threads)
            .args(["--format", "json", "scan", "builtin"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(json["summary"]["rows"], 394);
        // output order is input order regardless of parallelism
        assert_eq!(json["rows"][0]["params"]["v"], 9);
        assert_eq!(json["rows"][393]["params"]["v"], 196);
    }
}

#[test]
fn scan_parse_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "10 3 0\n").unwrap();
    let out = bin()
        .args(["scan", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_empty_file_is_ok() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    std::fs::write(&path, "# nothing here\n").unwrap();
    let (json, code) = run_json(&["scan", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["summary"]["rows"], 0);
}

#[test]
fn snf_of_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "2 2\n2 0\n0 3\n").unwrap();
    let (json, code) = run_json(&["snf", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["invariant_factors"], serde_json::json!(["1", "6"]));

    let zero = dir.path().join("zero.txt");
    std::fs::write(&zero, "1 1\n0\n").unwrap();
    let (json, _) = run_json(&["snf", zero.to_str().unwrap()]);
    assert_eq!(json["invariant_factors"], serde_json::json!(["0"]));
}

#[test]
fn snf_from_stdin_with_transforms() {
    let mut child = bin()
        .args(["--format", "json", "-v", "snf", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"2 3\n4 6 8\n2 4 8\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["transforms_verified"], true);
}

#[test]
fn snf_parse_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "2 2\n1 2 3\n").unwrap();
    let out = bin()
        .args(["snf", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonexist28_report() {
    let (json, code) = run_json(&["nonexist28"]);
    assert_eq!(code, 0);
    assert_eq!(json["p_rank"], 22);
    assert_eq!(json["kernel_dimension"], 6);
    assert_eq!(json["independent_kernel_vectors"], 7);
    assert_eq!(json["contradiction"], true);
    let human = stdout_of(&["nonexist28"]);
    assert!(human.contains("contradiction"));
}

#[test]
fn unknown_family_exits_2() {
    let out = run(&["compute", "--family", "dodecahedron"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
