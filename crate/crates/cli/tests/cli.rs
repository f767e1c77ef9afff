use std::path::PathBuf;
use std::process::{Command, Output};

use spin7_cli::report::{emit, render_json, Format, Report};
use spin7_cli::{load_scenario, run, CliError, Scenario};

const SECTION4: &str = include_str!("../scenarios/section4.toml");

fn spin7(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin7")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn builtins_parse() {
    for name in spin7_cli::scenario::builtin_names() {
        let s = load_scenario(name).unwrap();
        assert_eq!(s.name, name);
    }
}

#[test]
fn ill_formed_weights_are_a_parse_error() {
    let text = SECTION4.replace("weights = [1, 1, 1, 1, 4]", "weights = [2, 4]");
    assert!(matches!(Scenario::from_toml(&text), Err(CliError::Parse(_))));
    let path = scratch("bad_weights.toml", &text);
    let o = spin7(&["pipeline", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_fields_are_rejected() {
    let text = SECTION4.replace("sheets = 4\nprinted_branch", "sheets = 4\nbranches = 2\nprinted_branch");
    assert!(matches!(Scenario::from_toml(&text), Err(CliError::Parse(_))));
}

#[test]
fn failing_condition_is_an_inconsistency() {
    let text = SECTION4.replace("degrees = [8, 8]", "degrees = [7, 8]");
    let scenario = Scenario::from_toml(&text).unwrap();
    assert!(matches!(run(&scenario), Err(CliError::Inconsistency(_))));
    let path = scratch("bad_degree.toml", &text);
    assert_eq!(spin7(&["pipeline", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(spin7(&["check", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn report_json_round_trips() {
    for name in spin7_cli::scenario::builtin_names() {
        let report = run(&load_scenario(name).unwrap()).unwrap();
        let back: Report = serde_json::from_str(&render_json(&report)).unwrap();
        assert_eq!(back, report);
    }
}

#[test]
fn empty_report_renders() {
    let r = Report::empty("nothing");
    let v: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
    assert_eq!(v["trace"], serde_json::json!([]));
    assert!(v["result"].is_null());
    assert!(emit(&r, Format::Text).starts_with("scenario nothing"));
}

#[test]
fn runs_are_deterministic() {
    let a = spin7(&["--format", "json", "reproduce", "all"]);
    let b = spin7(&["--format", "json", "reproduce", "all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pipeline_json_reports_a_hat() {
    let o = spin7(&["--format", "json", "pipeline", "section4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["A_hat"], 1);
    assert_eq!(v["result"]["holonomy"], "Spin(7)");
    assert_eq!(v["result"]["final"]["chi"], 1680);
}

#[test]
fn typo_warning_is_shown_and_strict_fails() {
    let o = spin7(&["pipeline", "section4"]);
    assert!(stdout(&o).contains("typo: χ(D̃∩Σ̃₄) is printed as 7808"));
    assert_eq!(spin7(&["--strict", "pipeline", "section4"]).status.code(), Some(2));
    assert_eq!(spin7(&["--strict", "pipeline", "m22"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(spin7(&["pipeline"]).status.code(), Some(1));
    assert_eq!(spin7(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(spin7(&["pipeline", "/nonexistent/scenario.toml"]).status.code(), Some(1));
    assert_eq!(spin7(&["reproduce", "m33"]).status.code(), Some(1));
    assert_eq!(spin7(&["hodge", "hypersurface", "--weights", "2,4", "--degree", "8"]).status.code(), Some(1));
}

#[test]
fn arithmetic_subcommands() {
    let o = spin7(&["euler", "ci", "--ambient", "4", "--degrees", "8"]);
    assert_eq!(stdout(&o), "χ = -2096\n");
    let o = spin7(&["euler", "branched", "--cover", "-2096", "--branch", "304"]);
    assert_eq!(stdout(&o), "χ = -296\n");
    assert_eq!(spin7(&["euler", "branched", "--cover", "1", "--branch", "0"]).status.code(), Some(2));

    let o = spin7(&["--format", "json", "hilbert", "--num", "8,8", "--den", "1,1,1,1,4", "--order", "8"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"][8], 199);

    let o = spin7(&["--format", "json", "hodge", "hypersurface", "--weights", "1,1,1,1,4,4", "--degree", "8"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["euler"], 306);

    let o = spin7(&["--format", "json", "hodge", "surface", "--chi", "1376", "--h02", "199"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tau"], -576);

    let o = spin7(&["hilbert", "--den", "1,1,1,1,4,4", "--jacobian", "4"]);
    assert!(stdout(&o).starts_with("R(f) = 0"));
}

#[test]
fn check_lists_conditions_and_strata() {
    let o = spin7(&["check", "m12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("V₁ in ℂP5(1,1,1,1,4,4)"));
    assert!(text.contains("scalar ℂ⁴/ℤ₄"));
}

#[test]
fn cayley_verify_passes() {
    let o = spin7(&["--format", "json", "cayley", "verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tangent_rank"], 43);
    assert_eq!(v["stabilizer_dimension"], 21);
}
