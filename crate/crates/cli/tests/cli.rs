//! End-to-end tests of the `ffqe` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use ffqe::logic::parse;
use ffqe::oracle::equivalent;
use ffqe::FieldSpec;
use serde_json::Value;

fn ffqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffqe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/s2vd").join(name).display().to_string()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ffqe-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn schema() -> jsonschema::Validator {
    let text =
        fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/json-output.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("invalid JSON ({e}): {}", stdout(o)))
}

fn without_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(without_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(without_timings),
        _ => {}
    }
}

#[test]
fn walkthrough_output() {
    let file = corpus("walkthrough.fol");
    let o = ffqe(&["qe", "--field", "3", &file]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "c^3 - c = 0");
    let o = ffqe(&["qe", "--field", "3", "--simplify", &file]);
    assert_eq!(stdout(&o), "true");
}

#[test]
fn field_header_is_used_without_flag() {
    let o = ffqe(&["qe", &corpus("walkthrough.fol")]);
    assert_eq!(stdout(&o), "c^3 - c = 0");
}

#[test]
fn phi3_decides_true() {
    let o = ffqe(&["decide", "--field", "4", &corpus("phi3.fol")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "true");
}

#[test]
fn witness_and_none() {
    let dir = scratch_dir("witness");
    let sat = write_file(&dir, "sat.fol", "exists x y. (x*y = 1 /\\ x = 2)\n");
    let o = ffqe(&["witness", "--field", "3", &sat]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("x = 2") && text.contains("y = 2"), "{text}");
    let unsat = write_file(&dir, "unsat.fol", "exists x. x^2 = 2\n");
    assert_eq!(stdout(&ffqe(&["witness", "--field", "3", &unsat])), "none");
}

#[test]
fn gb_prints_reduced_basis() {
    let o = ffqe(&["gb", "--field", "3", "--vars", "x,y", "--polys", "x^2 - y, x*y - 1", "--field-polys"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines, ["x - 1", "y - 1"]);
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ffqe"))
        .args(["decide", "--field", "2", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"forall x. x^2 = x\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "true");
}

#[test]
fn malformed_input_reports_location() {
    let dir = scratch_dir("malformed");
    let bad = write_file(&dir, "malformed.fol", "exists x.\n  (x + = 1)\n");
    let o = ffqe(&["qe", "--field", "3", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("malformed.fol:2:"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn exit_codes() {
    let walk = corpus("walkthrough.fol");
    assert_eq!(ffqe(&["--bogus"]).status.code(), Some(1));
    assert_eq!(ffqe(&["qe", "--field", "3", "/nonexistent/input.fol"]).status.code(), Some(1));
    assert_eq!(ffqe(&["qe", "--field", "6", &walk]).status.code(), Some(2));
    assert_eq!(ffqe(&["decide", "--field", "3", &walk]).status.code(), Some(2));
    assert_eq!(ffqe(&["qe", "--field", "3", "--order", "a,b,a", &walk]).status.code(), Some(1));
    let o = ffqe(&["qe", "--budget-secs", "0", &corpus("phi1.fol")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget exhausted"));
    assert_eq!(ffqe(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ffqe"))
        .args(["qe", &corpus("phi1.fol")])
        .env("FFQE_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for (file, args) in
        [("phi2_6.fol", vec!["qe"]), ("walkthrough.fol", vec!["qe", "--cnf"]), ("phi1_check_6.fol", vec!["decide"])]
    {
        let path = corpus(file);
        let mut argv = args.clone();
        argv.push(&path);
        let first = ffqe(&argv);
        let second = ffqe(&argv);
        assert_eq!(first.stdout, second.stdout, "{file}");
        argv.insert(0, "--json");
        let (mut a, mut b) = (json(&ffqe(&argv)), json(&ffqe(&argv)));
        without_timings(&mut a);
        without_timings(&mut b);
        assert_eq!(a, b, "{file}");
    }
}

/// Corpus files whose enumeration fits the oracle's default bound.
const SMALL_CORPUS: [&str; 6] =
    ["walkthrough.fol", "phi1_6.fol", "phi2_6.fol", "phi1_check_6.fol", "phi2_check_6.fol", "phi3.fol"];

#[test]
fn engines_agree_on_corpus() {
    for file in SMALL_CORPUS {
        let path = corpus(file);
        let text = fs::read_to_string(&path).unwrap();
        let q: u64 = text.lines().next().unwrap().trim_start_matches("# field:").trim().parse().unwrap();
        let field = FieldSpec::of_order(q).unwrap();
        let phi = parse(&text, &field).unwrap();
        let command = if phi.free_variables().is_empty() { "decide" } else { "qe" };
        let by_gb = ffqe(&[command, &path]);
        let by_oracle = ffqe(&["--engine", "oracle", command, &path]);
        assert!(by_gb.status.success(), "{file}: {}", stderr(&by_gb));
        assert!(by_oracle.status.success(), "{file}: {}", stderr(&by_oracle));
        if command == "decide" {
            assert_eq!(stdout(&by_gb), stdout(&by_oracle), "{file}");
        } else {
            let a = parse(&stdout(&by_gb), &field).unwrap();
            let b = parse(&stdout(&by_oracle), &field).unwrap();
            assert!(equivalent(&a, &b, &field).unwrap(), "{file}: {a} vs {b}");
        }
    }
}

#[test]
fn corpus_regeneration_matches_checked_in_files() {
    let dir = scratch_dir("corpus");
    let o = ffqe(&["corpus", "s2vd", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let written: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(written.len(), 11);
    for path in written {
        let name = Path::new(&path).file_name().unwrap().to_str().unwrap().to_string();
        assert_eq!(fs::read_to_string(&path).unwrap(), fs::read_to_string(corpus(&name)).unwrap(), "{name}");
    }
}

#[test]
fn json_outputs_follow_schema() {
    let validator = schema();
    let dir = scratch_dir("json");
    let walk = corpus("walkthrough.fol");
    let check = corpus("phi1_check_6.fol");
    let phi1 = corpus("phi1.fol");
    let sat = write_file(&dir, "sat.fol", "exists x. x^2 = 1\n");
    let unsat = write_file(&dir, "unsat.fol", "exists x. x^2 = 2\n");
    let runs: Vec<Vec<&str>> = vec![
        vec!["qe", &walk],
        vec!["qe", "--simplify", &walk],
        vec!["decide", &check],
        vec!["witness", "--field", "3", &sat],
        vec!["witness", "--field", "3", &unsat],
        vec!["gb", "--field", "4", "--vars", "x,y", "--polys", "x*y + w, y^2 + 1"],
        vec!["corpus", "s2vd", dir.to_str().unwrap()],
        vec!["qe", "--field", "6", &walk],
        vec!["qe", "--budget-secs", "0", &phi1],
        vec!["qe", "--field", "3", "/nonexistent/input.fol"],
    ];
    for args in runs {
        let mut argv = vec!["--json"];
        argv.extend(args.iter().copied());
        let o = ffqe(&argv);
        let v = json(&o);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v}");
        assert_eq!(v["status"] == "ok", o.status.success(), "{args:?}");
    }
}

#[test]
fn json_formula_encoding() {
    let o = ffqe(&["--json", "qe", &corpus("walkthrough.fol")]);
    let v = json(&o);
    assert_eq!(v["formula"], serde_json::json!([[{"eq": true, "poly": "c^3 - c"}]]));
    let rounds = v["stats"]["rounds"].as_array().unwrap();
    assert_eq!(rounds.len(), 3);
    assert_eq!(rounds[1]["bases"], serde_json::json!([["b^2 - b*c", "c^2 - 1"]]));
    let o = ffqe(&["--json", "qe", "--simplify", &corpus("walkthrough.fol")]);
    assert_eq!(json(&o)["formula"], serde_json::json!([]));
    let o = ffqe(&["--json", "decide", &corpus("phi1_check_6.fol")]);
    let v = json(&o);
    assert_eq!(v["value"], false);
    assert_eq!(v["formula"], serde_json::json!([[]]));
}
