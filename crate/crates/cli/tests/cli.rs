//! End-to-end tests of the `gpar` binary: flag parsing, exit codes,
//! output schemas, and the budget/normalization notices.

use std::path::Path;
use std::process::{Command, Output};

fn gpar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpar"))
        .args(args)
        .env_remove("GPAR_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn gpar_with_env(args: &[&str], budget: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpar"))
        .args(args)
        .env("GPAR_NODE_BUDGET", budget)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn gen_emits_dot_with_all_vertices_and_edges() {
    let output = gpar(&["gen", "--n", "5", "--k", "2", "--format", "dot"]);
    assert_eq!(exit_code(&output), 0);
    let dot = stdout_of(&output);
    assert!(dot.starts_with("graph g {"));
    assert_eq!(dot.matches("label=\"u").count(), 5);
    assert_eq!(dot.matches("label=\"v").count(), 5);
    assert_eq!(dot.matches(" -- ").count(), 15);
}

#[test]
fn gen_emits_parseable_json() {
    let output = gpar(&["gen", "--n", "4", "--k", "1"]);
    assert_eq!(exit_code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["vertex_count"], 8);
    assert_eq!(value["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn gen_folds_reducible_k_with_a_notice() {
    // k = 2 exceeds floor((n-1)/2) = 1 but n - k = 1 is in range, so the
    // parameters normalize instead of failing.
    let output = gpar(&["gen", "--n", "3", "--k", "2"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stderr_of(&output).contains("normalized to k = 1"));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn gen_reports_the_mirror_normalization() {
    let output = gpar(&["gen", "--n", "10", "--k", "8"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stderr_of(&output).contains("k = 8 normalized to k = 2"));
}

#[test]
fn gen_rejects_out_of_range_k_naming_the_bound() {
    let output = gpar(&["gen", "--n", "10", "--k", "5"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("floor((n-1)/2)"));
}

#[test]
fn ar_prints_the_result_json_and_a_summary() {
    let output = gpar(&["ar", "--n", "10", "--k", "2", "--d", "5"]);
    assert_eq!(exit_code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["value"], 22);
    assert_eq!(value["method"], "packing");
    assert!(stderr_of(&output).contains("Ar(P_{10,2}, C_5) = 22 via packing"));
}

#[test]
fn ar_handles_the_floor_formula_family() {
    let output = gpar(&["ar", "--n", "7", "--k", "2", "--d", "5"]);
    assert_eq!(exit_code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["value"], 16);
}

#[test]
fn ar_writes_the_result_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("result.json");
    let output = gpar(&[
        "ar",
        "--n",
        "8",
        "--k",
        "3",
        "--d",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout_of(&output).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["value"], 17);
}

#[test]
fn ar_exhausting_the_budget_exits_three_with_a_bracket() {
    let output = gpar(&[
        "ar", "--n", "10", "--k", "3", "--d", "6", "--budget", "10000",
    ]);
    assert_eq!(exit_code(&output), 3);
    assert!(stderr_of(&output).contains("Ar is in ["));
}

#[test]
fn budget_env_variable_is_honored() {
    let output = gpar_with_env(&["ar", "--n", "10", "--k", "3", "--d", "6"], "10000");
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn budget_flag_beats_the_environment() {
    // The environment would allow the full solve; the flag cuts it off.
    let output = gpar_with_env(
        &[
            "ar", "--n", "10", "--k", "3", "--d", "6", "--budget", "10000",
        ],
        "200000000",
    );
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn garbage_budget_env_is_an_input_error() {
    let output = gpar_with_env(&["ar", "--n", "3", "--k", "1", "--d", "5"], "plenty");
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("GPAR_NODE_BUDGET"));
}

#[test]
fn coloring_check_verifies_the_odd_rim_construction() {
    let output = gpar(&["coloring", "--lemma", "3.18", "--n", "9", "--k", "3", "--check"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stderr_of(&output).contains("ok: 22 colors"));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["colors"], 22);
}

#[test]
fn coloring_check_verifies_the_fixed_catalog_entry() {
    let output = gpar(&["coloring", "--lemma", "3.16", "--n", "10", "--k", "3", "--check"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stderr_of(&output).contains("ok: 22 colors"));
}

#[test]
fn coloring_rejects_foreign_parameters() {
    let output = gpar(&["coloring", "--lemma", "3.1", "--n", "5", "--k", "1"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("requires"));
}

#[test]
fn verify_theorems_smallest_table_is_a_single_row() {
    let output = gpar(&["verify-theorems", "--d", "6", "--n-max", "3"]);
    assert_eq!(exit_code(&output), 0);
    let csv = stdout_of(&output);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,k,d,closed_form,computed,method,millis,agree");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("3,1,6,7,7,"));
    assert!(lines[1].ends_with("true"));
}

#[test]
fn verify_theorems_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let output = gpar(&[
        "verify-theorems",
        "--d",
        "6",
        "--n-max",
        "5",
        "--jobs",
        "2",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(Path::new(&path).exists());
    let csv = std::fs::read_to_string(&path).unwrap();
    // Rows (3,1), (4,1), (5,1), (5,2) — all agreeing.
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().any(|l| l.starts_with("5,2,6,11,11,")));
    assert!(csv.lines().all(|l| !l.contains("false")));
    assert!(stderr_of(&output).contains("4 row(s): 4 agree, 0 skipped"));
}

#[test]
fn closed_stdout_pipe_ends_the_run_quietly() {
    // A reader that hangs up early (`gpar gen ... | head`) must not crash
    // the process. The host is big enough that the DOT text overflows the
    // pipe buffer, so the write hits the closed end for sure.
    use std::io::Read;
    use std::process::Stdio;

    let mut child = Command::new(env!("CARGO_BIN_EXE_gpar"))
        .args(["gen", "--n", "20000", "--k", "1", "--format", "dot"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");

    let mut stdout = child.stdout.take().expect("stdout is piped");
    let mut prefix = [0u8; 16];
    stdout.read_exact(&mut prefix).expect("some output arrives");
    drop(stdout); // hang up

    let status = child.wait().expect("child finishes");
    assert_eq!(status.code(), Some(0));
    let mut stderr_text = String::new();
    child
        .stderr
        .take()
        .expect("stderr is piped")
        .read_to_string(&mut stderr_text)
        .expect("stderr is UTF-8");
    assert!(!stderr_text.contains("panicked"), "{stderr_text}");
}
