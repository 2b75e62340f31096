use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    json: Value,
    stderr: String,
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn raw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercolor"))
        .args(args)
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> Run {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = raw(&all);
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        json: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

fn check(report: &Value, name: &str) -> Option<bool> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .map(|c| c["passed"].as_bool().unwrap())
}

const TRIANGLE: &str = "3 3\n0 1\n0 2\n1 2\n";
const EDGE3: &str = "3 1\n0 1 2\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn poly_examples() {
    let dir = TempDir::new().unwrap();
    for (text, expected) in [
        (TRIANGLE, vec!["0", "2", "-3", "1"]),
        (EDGE3, vec!["0", "-1", "0", "1"]),
        ("2 0\n", vec!["0", "0", "1"]),
    ] {
        let f = write(&dir, "h.txt", text);
        let r = run(&["poly", "--input", p(&f), "-k", "3"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(strings(&r.json["results"]["polynomial"]), expected);
        assert_eq!(r.json["results"]["whitney"], r.json["results"]["polynomial"]);
        assert_eq!(check(&r.json, "brute_matches_polynomial"), Some(true));
    }
}

#[test]
fn report_schema() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "h.txt", TRIANGLE);
    let r = run(&["poly", "--input", p(&f)]);
    let keys: Vec<&str> = r.json.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["checks", "command", "instance", "results", "timing", "version"]);
    assert_eq!(r.json["command"], "poly");
    assert_eq!(r.json["instance"]["n"], "3");
    assert_eq!(r.json["instance"]["connected"], true);
    assert!(r.json["timing"]["elapsed_ms"].is_string());
}

#[test]
fn cycles_examples() {
    let dir = TempDir::new().unwrap();
    let count = |text: &str| {
        let f = write(&dir, "h.txt", text);
        let r = run(&["cycles", "--input", p(&f)]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        (
            r.json["results"]["delta_cycles"].as_array().unwrap().len(),
            r.json["results"]["broken_cycles"].as_array().unwrap().len(),
        )
    };
    assert_eq!(count(TRIANGLE), (1, 1));
    assert_eq!(count(EDGE3), (0, 0));
    assert_eq!(count("4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n"), (4, 3));
}

#[test]
fn listcount_examples() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", EDGE3);
    for (lists, expected) in [
        ("3 2 2\n0 1\n0 1\n0 1\n", "6"),
        ("3 2 4\n0 1\n0 1\n2 3\n", "8"),
        ("3 2 3\n0 1\n0 1\n1 2\n", "7"),
    ] {
        let l = write(&dir, "l.txt", lists);
        let r = run(&["listcount", "--input", p(&h), "--lists", p(&l)]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let counts = &r.json["results"]["counts"];
        assert_eq!(counts["brute"], expected);
        assert_eq!(counts["inclusion_exclusion"], expected);
        assert_eq!(counts["broken"], expected);
        assert_eq!(check(&r.json, "counts_agree"), Some(true));
    }
    let t = write(&dir, "t.txt", TRIANGLE);
    let l = write(&dir, "l.txt", "3 2 2\n0 1\n0 1\n0 1\n");
    let r = run(&["listcount", "--input", p(&t), "--lists", p(&l)]);
    assert_eq!(r.json["results"]["counts"]["broken"], "0");
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.txt", TRIANGLE);
    let r = run(&["verify", "--input", p(&t), "-k", "3", "--universe", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let m = &r.json["results"]["minimizer"];
    assert_eq!(m["strict"], true);
    assert_eq!(m["min_count"], "6");
    assert_eq!(m["argmin_is_constant"], true);
    assert_eq!(check(&r.json, "strict_minimizer"), Some(true));

    let e = write(&dir, "e.txt", EDGE3);
    let r = run(&["verify", "--input", p(&e), "-k", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["results"]["minimizer"]["strict"], true);

    let r = run(&["verify", "--input", p(&t), "-k", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["results"]["minimizer"]["mode"], "exploration");
    assert_eq!(check(&r.json, "strict_minimizer"), None);
}

#[test]
fn verify_defaults_to_k_min() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.txt", TRIANGLE);
    let r = run(&["verify", "--input", p(&t)]);
    assert_eq!(r.json["results"]["threshold"]["k_min"], "3");
    assert_eq!(r.json["results"]["minimizer"]["k"], "3");
    assert_eq!(r.json["results"]["minimizer"]["universe"], "5");
}

#[test]
fn improper_examples() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "p.txt", "3 2\n0 1\n1 2\n");
    let r = run(&["improper", "--input", p(&path), "-d", "1", "-k", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["counts"]["brute"], "6");
    assert_eq!(r.json["results"]["counts"]["via_star"], "6");
    assert_eq!(r.json["results"]["p"], "1");

    let r0 = run(&["improper", "--input", p(&path), "-d", "0"]);
    let poly = run(&["poly", "--input", p(&path)]);
    assert_eq!(r0.json["results"]["polynomial"], poly.json["results"]["polynomial"]);
    assert_eq!(check(&r0.json, "d0_star_equals_graph"), Some(true));

    let k4 = write(&dir, "k4.txt", K4);
    let r = run(&["improper", "--input", p(&k4), "-d", "1"]);
    assert_eq!(r.json["results"]["p"], "4");
    assert_eq!(r.json["results"]["threshold"]["k_min"], "4");
}

#[test]
fn improper_with_disconnected_star_is_flagged() {
    let dir = TempDir::new().unwrap();
    // two disjoint paths: the star hypergraph has two separate edges
    let g = write(&dir, "g.txt", "6 4\n0 1\n1 2\n3 4\n4 5\n");
    let r = run(&[
        "improper",
        "--input",
        p(&g),
        "-d",
        "1",
        "-k",
        "2",
        "--strategy",
        "exhaustive",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["star_connected"], false);
    assert_eq!(r.json["results"]["threshold"]["applies"], false);
    assert_eq!(r.json["results"]["component_minimizers"].as_array().unwrap().len(), 2);
    assert_eq!(check(&r.json, "star_strict_minimizer"), None);
}

#[test]
fn threshold_from_m_or_file() {
    let r = run(&["threshold", "-m", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["results"]["threshold"]["k_min"], "4");
    assert!(r.json["results"]["threshold"]["threshold"]
        .as_str()
        .unwrap()
        .starts_with("3.4037779713"));
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.txt", TRIANGLE);
    let r = run(&["threshold", "--input", p(&t)]);
    assert_eq!(r.json["results"]["threshold"]["k_min"], "3");
    assert_eq!(run(&["threshold"]).code, 2);
}

#[test]
fn reports_are_stable_across_runs_and_threads() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", "5 2\n0 1 2\n2 3 4\n");
    let strip = |mut v: Value| {
        v["timing"] = Value::Null;
        v.to_string()
    };
    let args = [
        "verify",
        "--input",
        p(&h),
        "-k",
        "2",
        "--strategy",
        "random",
        "--samples",
        "300",
        "--seed",
        "5",
    ];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    let again = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.code, 0, "{}", one.stderr);
    assert_eq!(strip(one.json.clone()), strip(four.json));
    assert_eq!(strip(one.json), strip(again.json));
}

#[test]
fn sort_edges_is_recorded() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", "3 3\n1 2\n0 1\n0 2\n");
    let input = run(&["cycles", "--input", p(&h)]);
    let lex = run(&["cycles", "--input", p(&h), "--sort-edges", "lex"]);
    assert_eq!(lex.json["instance"]["edge_order"], "lex");
    assert_eq!(input.json["results"]["broken_cycles"][0]["removed"], "2");
    assert_eq!(
        lex.json["results"]["broken_cycles"][0]["edges"],
        serde_json::json!(["0", "1"])
    );
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "2 1\n0 0\n");
    let r = run(&["poly", "--input", p(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("repeats vertex 0"), "{}", r.stderr);

    let big = write(&dir, "k4.txt", K4);
    let r = run(&["poly", "--input", p(&big), "--max-edges", "5"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--max-edges"));

    let r = run(&["verify", "--input", p(&write(&dir, "d.txt", "4 2\n0 1\n2 3\n"))]);
    assert_eq!(r.code, 2);

    let r = run(&["listcount", "--input", p(&big)]);
    assert_eq!(r.code, 2);
}

#[test]
fn json_file_and_summary() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.txt", TRIANGLE);
    let out = dir.path().join("report.json");
    let o = raw(&["poly", "--input", p(&t), "--json", p(&out)]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("all checks passed"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["command"], "poly");
}
