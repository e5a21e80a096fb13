use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const GOLDEN: [&str; 4] = ["--beta-poly", "1,-3,1", "--beta-interval", "2,3"];
const TAU: [&str; 4] = ["--beta-poly", "-1,-1,1", "--beta-interval", "1,2"];
const PLASTIC: [&str; 4] = ["--beta-poly", "-1,-1,0,1", "--beta-interval", "1,2"];
const TWO: [&str; 4] = ["--beta-poly", "-2,1", "--beta-interval", "2,2"];

fn negabeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negabeta"))
        .args(args)
        .env_remove("NEGABETA_MAX_ITERS")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_negabeta"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn args<'a>(head: &[&'a str], base: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(base).chain(tail).copied().collect()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn refs_of_golden_square() {
    let o = negabeta(&args(&["refs", "--preset", "ito-sadahiro"], &GOLDEN, &[]));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let dl = text.lines().find(|l| l.starts_with("d(l)")).unwrap();
    assert!(dl.contains("(2 1)"), "{text}");
}

#[test]
fn expansion_of_zero() {
    let o = negabeta(&args(&["expand", "--preset", "balanced"], &PLASTIC, &["--x", "0"]));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("(0)"));
}

#[test]
fn golden_ratio_has_nontrivial_finite_expansions() {
    let o = negabeta(&args(&["predicates", "--preset", "ito-sadahiro", "--format", "json"], &TAU, &[]));
    assert_eq!(json(&o)["predicates"]["fin_nontrivial"], Value::Bool(true));
}

fn scan(base: &[&str], grid: &str) -> Vec<Value> {
    let o = negabeta(&args(&["scan-l", "--grid", grid, "--format", "json"], base, &[]));
    assert_eq!(o.status.code(), Some(0));
    json(&o).as_array().unwrap().clone()
}

#[test]
fn scan_rows() {
    let rows = scan(&TAU, "8");
    assert_eq!(rows.len(), 8);
    let half = rows.iter().find(|r| r["l"] == "-1/2").unwrap();
    assert_eq!(half["predicates"]["fin_nontrivial"], Value::Bool(false));

    for r in scan(&TWO, "8") {
        let l = r["l"].as_str().unwrap();
        let (n, d) = l.split_once('/').unwrap();
        let v = n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap();
        if (-2.0 / 3.0..=-1.0 / 3.0).contains(&v) {
            assert_eq!(r["predicates"]["shift_unique"], Value::Bool(true), "l = {l}");
        }
    }

    let two_rows = scan(&TAU, "2");
    assert_eq!(two_rows.len(), 2);
    assert_eq!(two_rows[1]["l"], "0/1");
}

#[test]
fn text_scan_has_a_row_per_point() {
    let o = negabeta(&args(&["scan-l", "--grid", "4"], &TAU, &[]));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let a = args(&["automaton", "--preset", "ito-sadahiro", "--format", "dot"], &GOLDEN, &[]);
    assert_eq!(negabeta(&a).stdout, negabeta(&a).stdout);
    let b = args(&["scan-l", "--grid", "6"], &PLASTIC, &[]);
    assert_eq!(negabeta(&b).stdout, negabeta(&b).stdout);
}

#[test]
fn automaton_outputs() {
    let o = negabeta(&args(&["automaton", "--preset", "ito-sadahiro", "--format", "json", "--count", "4"], &TWO, &[]));
    let v = json(&o);
    let states = v["states"].as_u64().unwrap();
    assert_eq!(v["initial"], 0);
    for t in v["transitions"].as_array().unwrap() {
        let t = t.as_array().unwrap();
        assert_eq!(t.len(), 3);
        assert!(t[0].as_u64().unwrap() < states && t[2].as_u64().unwrap() < states);
    }
    assert_eq!(v["counts"][0], "1");
    assert_eq!(v["counts"][1], "3");

    let dot = stdout(&negabeta(&args(&["automaton", "--preset", "ito-sadahiro", "--format", "dot"], &TWO, &[])));
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("q0 -> "));
}

#[test]
fn system_json_round_trips() {
    let o = negabeta(&args(&["predicates", "--preset", "balanced", "--format", "json"], &GOLDEN, &[]));
    let v = json(&o);
    let system = v["system"].to_string();
    let again = negabeta(&["predicates", "--system", &system, "--format", "json"]);
    assert_eq!(json(&again), v);
}

#[test]
fn value_of_counterexample_is_left_endpoint() {
    let o = negabeta(&args(&["value", "--format", "json"], &GOLDEN, &["2 0 0 (2 1)"]));
    let got = json(&o)[0]["value"].clone();
    let sys = json(&negabeta(&args(&["predicates", "--preset", "ito-sadahiro", "--format", "json"], &GOLDEN, &[])));
    assert_eq!(got, sys["system"]["l"]);
}

#[test]
fn admissibility_from_stdin() {
    let o = with_stdin(
        &args(&["admissible", "--preset", "ito-sadahiro"], &GOLDEN, &[]),
        "(2 1)\n2 0 0 (2 1)\n\n(0)\n",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(2 1)\ttrue\n2 0 0 (2 1)\tfalse\n(0)\ttrue\n");
}

#[test]
fn alternate_comparison() {
    let o = negabeta(&["alt-compare", "2 1 0 (2)", "0 2 1 0 (2)"]);
    assert_eq!(stdout(&o), "Less (first difference at position 1)\n");
    let o = negabeta(&["alt-compare", "--format", "json", "(2 1)", "2 0 0 (2 1)"]);
    assert_eq!(json(&o), serde_json::json!({"outcome": "Greater", "witness": 2}));
}

#[test]
fn refutation_of_claims() {
    let o = negabeta(&["refute", "2 0 0 (2 1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("has d(l) = (2 1)"), "{}", stdout(&o));
    assert_eq!(negabeta(&["refute", "(1)"]).status.code(), Some(2));
}

#[test]
fn oracle_report_shape() {
    let o = negabeta(&args(
        &["oracle-check", "--preset", "ito-sadahiro", "--trials", "10", "--depth", "20", "--format", "json"],
        &TAU,
        &[],
    ));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["trials"], 10);
    assert_eq!(v["depth"], 20);
    assert_eq!(v["mismatches"], serde_json::json!([]));
}

#[test]
fn cylinder_of_a_digit() {
    let o = negabeta(&args(&["cylinder", "--l", "0,-1/3"], &TAU, &["0"]));
    assert_eq!(o.status.code(), Some(0));
    let counts = json(&negabeta(&args(
        &["automaton", "--preset", "ito-sadahiro", "--count", "3", "--format", "json"],
        &TAU,
        &[],
    )))["counts"]
        .clone();
    for len in 1..=3usize {
        let nonempty = (0..1u32 << len)
            .filter(|bits| {
                let word: Vec<String> = (0..len).map(|i| ((bits >> i) & 1).to_string()).collect();
                let o = negabeta(&args(&["cylinder", "--preset", "ito-sadahiro"], &TAU, &[&word.join(" ")]));
                assert_eq!(o.status.code(), Some(0));
                stdout(&o) != "empty\n"
            })
            .count();
        assert_eq!(counts[len], nonempty.to_string(), "length {len}");
    }
}

#[test]
fn exit_codes() {
    // outside the domain
    let o = negabeta(&args(&["expand", "--preset", "balanced"], &TAU, &["--x", "3/4"]));
    assert_eq!(o.status.code(), Some(2));
    // l out of range
    let o = negabeta(&args(&["predicates", "--l", "1/2"], &TAU, &[]));
    assert_eq!(o.status.code(), Some(2));
    // budget exhausted
    let o = negabeta(&args(&["expand", "--preset", "ito-sadahiro", "--max-iters", "5"], &PLASTIC, &["--x", "1/7"]));
    assert_eq!(o.status.code(), Some(3));
    // missing system, unknown command, dot outside automaton
    assert_eq!(negabeta(&["refs"]).status.code(), Some(64));
    assert_eq!(negabeta(&["frobnicate"]).status.code(), Some(64));
    let o = negabeta(&args(&["refs", "--preset", "balanced", "--format", "dot"], &TAU, &[]));
    assert_eq!(o.status.code(), Some(64));
    assert_eq!(negabeta(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_negabeta"))
        .args(args(&["expand", "--preset", "ito-sadahiro"], &PLASTIC, &["--x", "1/7"]))
        .env("NEGABETA_MAX_ITERS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn real_expansion_round_trip() {
    let o = negabeta(&args(&["expand", "--real", "--preset", "balanced", "--format", "json"], &TAU, &["--x", "5"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["exponent"].as_i64().unwrap() > 0);
}
