use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn stardisc(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stardisc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn gen(args: &[&str]) -> String {
    let out = stardisc(&[&["gen"], args].concat(), None);
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn gen_chain_writes_one_line_per_point() {
    let text = gen(&["--kind", "chain", "--n", "9", "--d", "2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "0.1 0.1");
    assert_eq!(lines[8], "0.9 0.9");
}

#[test]
fn gen_header_and_staircase() {
    let text = gen(&["--kind", "staircase", "--n", "9", "--header"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# d=2 n=9"));
    assert_eq!(lines.next(), Some("0.1 0.9"));
}

#[test]
fn gen_random_is_deterministic_per_seed() {
    let a = gen(&["--kind", "random", "--n", "20", "--d", "3", "--seed", "7"]);
    let b = gen(&["--kind", "random", "--n", "20", "--d", "3", "--seed", "7"]);
    let c = gen(&["--kind", "random", "--n", "20", "--d", "3", "--seed", "8"]);
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn disc_single_point_from_stdin() {
    let out = stardisc(&["disc", "-", "--mesh", "4"], Some("0.5\n"));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["value"].as_f64(), Some(0.5));
    assert_eq!(v["results"]["oracle_agrees"], Value::Bool(true));
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn witness_below_the_size_threshold_is_not_guaranteed() {
    let points = gen(&["--kind", "random", "--n", "100", "--d", "2", "--seed", "3"]);
    let out = stardisc(&["witness", "-"], Some(&points));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["case"], "trivial_1d");
    assert_eq!(v["results"]["guarantee_valid"], Value::Bool(false));
}

#[test]
fn witness_kappa_method_reports_the_partition() {
    let points = gen(&["--kind", "chain", "--n", "500", "--d", "2"]);
    let v = json(&stardisc(&["witness", "-", "--method", "kappa"], Some(&points)));
    assert!(v["results"]["kappa"].as_f64().unwrap() > 0.9);
    assert!(v["results"]["partition"]["p0"].is_u64());
}

#[test]
fn shatter_staircase_matches_the_sauer_shelah_bound() {
    let points = gen(&["--kind", "staircase", "--n", "9"]);
    let v = json(&stardisc(&["shatter", "-"], Some(&points)));
    assert_eq!(v["results"]["count"], "46");
    assert_eq!(v["results"]["sauer_shelah_bound"], "46");
    assert_eq!(v["results"]["max_boundary"], 2);
}

#[test]
fn boundary_property_p() {
    let points = gen(&["--kind", "chain", "--n", "9", "--d", "2"]);
    let v = json(&stardisc(&["boundary", "-", "--r", "2"], Some(&points)));
    assert_eq!(v["results"]["property_p"], Value::Bool(true));
    let points = gen(&["--kind", "staircase", "--n", "9"]);
    let v = json(&stardisc(&["boundary", "-", "--r", "2/1"], Some(&points)));
    assert_eq!(v["results"]["property_p"], Value::Bool(false));
}

#[test]
fn bounds_small_case() {
    let out = stardisc(&["bounds", "--n", "9", "--d", "2", "--r", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["sauer"], "46");
    assert_eq!(v["results"]["n_rec"], "46");
    assert_eq!(v["results"]["hat_n"], "46");
}

#[test]
fn check_passes_on_a_coarse_grid() {
    let out = stardisc(&["check", "--grid", "201", "--rational-grid", "5000"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["bernoulli"]["verified"], Value::Bool(true));
    assert_eq!(v["results"]["case3_rational"]["verified"], Value::Bool(true));
}

#[test]
fn verify_figure1_succeeds() {
    let out = stardisc(&["verify", "--suite", "figure1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["all_passed"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(stardisc(&["verify", "--suite", "nope"], None).status.code(), Some(2));
    assert_eq!(stardisc(&["gen", "--kind", "sobol", "--n", "3"], None).status.code(), Some(2));
    let out = stardisc(&["disc", "-"], Some("0.5 0.5\n0.5\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(stardisc(&["disc", "-"], Some("1.5\n")).status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_with_three() {
    let points = gen(&["--kind", "random", "--n", "30", "--d", "4"]);
    let out = stardisc(&["disc", "-", "--budget", "100"], Some(&points));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--sample"));
    let out = stardisc(&["disc", "-", "--sample", "1000"], Some(&points));
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["results"]["lower_bound"].as_f64().unwrap() > 0.0);
}
