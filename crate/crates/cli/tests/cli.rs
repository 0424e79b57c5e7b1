use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thue-area"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn assert_schema(name: &str, instance: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{instance:#}");
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn err_json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_schema("error", &v);
    v
}

#[test]
fn area_equality_case() {
    let v = ok_json(&["area", "X*Y*(X-Y)"]);
    assert_schema("area", &v);
    assert!((v["area"].as_f64().unwrap() - 15.899_748_752_569_05).abs() < 1e-8);
    assert_eq!(v["singular_angles"].as_array().unwrap().len(), 6);
}

#[test]
fn area_closed_form_cubic() {
    let v = ok_json(&["area", "[1,0,1,0]"]);
    assert_schema("area", &v);
    assert!((v["area"].as_f64().unwrap() - 7.285_951_943_662_745).abs() < 1e-8);
}

#[test]
fn invariant_and_disc() {
    let v = ok_json(&["invariant", "FSTAR(4)"]);
    assert_schema("invariant", &v);
    assert!((v["invariant"].as_f64().unwrap() - 11.772_640_372_703_19).abs() < 1e-8);

    let d = ok_json(&["disc", "X*Y*(X-Y)"]);
    assert_schema("disc", &d);
    assert_eq!(d["discriminant"], "1");

    let f = ok_json(&["disc", "[1.5, 0, 0, 1]"]);
    assert_schema("disc", &f);
    assert_eq!(f["exact"], true);
}

#[test]
fn counts() {
    let v = ok_json(&["count", "--definite", "--h", "1", "P(2)"]);
    assert_schema("count", &v);
    let pts = v["points"].as_array().unwrap();
    for p in [[1, 1], [1, 2], [-1, -1], [-1, -2]] {
        assert!(pts.contains(&serde_json::json!(p)));
    }

    let b = ok_json(&["count", "--box", "1", "--h", "1", "XY(X-Y)"]);
    assert_schema("count", &b);
    assert_eq!(b["count"], 7);
    assert!(b["caveat"].is_string());

    let bp = ok_json(&["count", "--box", "2", "--h", "1", "--points", "XY(X-Y)"]);
    assert_schema("count", &bp);
    assert_eq!(bp["points"].as_array().unwrap().len() as u64, bp["count"].as_u64().unwrap());
}

#[test]
fn mahler_table() {
    let v = ok_json(&["mahler", "P(2)", "--h-list", "1,2,4"]);
    assert_schema("mahler", &v);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    let b = ok_json(&["mahler", "XY(X-Y)", "--h-list", "1,4", "--box", "5"]);
    assert_schema("mahler", &b);
}

#[test]
fn extremal_small() {
    let v = ok_json(&["extremal", "--n-max", "4", "--restarts", "2", "--seed", "7"]);
    assert_schema("extremal", &v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn generators() {
    let p = ok_json(&["pk", "--k", "2"]);
    assert_schema("coefficients", &p);
    assert_eq!(p["coefficients"], serde_json::json!(["5", "-12", "13", "-6", "1"]));
    let f = ok_json(&["fstar", "--n", "3"]);
    assert_schema("coefficients", &f);
    let vals: Vec<f64> = f["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    for (a, b) in vals.iter().zip([0.0, 0.75, 0.0, -0.25]) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn csv_flag() {
    let out = run(&["--csv", "pk", "--k", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "index,coefficient\n0,2\n1,-2\n2,1\n");
    let out = run(&["mahler", "P(2)", "--h-list", "1", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("h,n_count,area_term,scaled_error\n1,7,"));
}

#[test]
fn domain_errors_exit_2() {
    let v = err_json(&["area", "X^2 - Y^2"], 2);
    assert_eq!(v["reason"], "degree-too-low");
    let v = err_json(&["area", "X^2*Y*(X-Y)"], 2);
    assert_eq!(v["error"], "DiscriminantZero");
    let v = err_json(&["count", "--definite", "--h", "1", "XY(X-Y)"], 2);
    assert_eq!(v["error"], "NotDefinite");
    let v = err_json(&["count", "--h", "1", "[1.5, 0, 1]"], 2);
    assert_eq!(v["error"], "NotInteger");
}

#[test]
fn parse_and_usage_errors_exit_1() {
    let v = err_json(&["area", "X**"], 1);
    assert_eq!(v["error"], "ParseError");
    err_json(&["plot", "P(2)", "--samples", "8"], 1);
    for args in [&["bogus"][..], &["area"], &["count", "P(2)"], &["area", "P(2)", "--tol", "abc"]] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["count", "--help"]).status.code(), Some(0));
}

#[test]
fn plot_outputs() {
    let dir = std::env::temp_dir().join(format!("thue-area-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.svg");
    let b = dir.join("b.svg");
    for p in [&a, &b] {
        let v = ok_json(&["plot", "P(3)", "--window", "4", "--samples", "64", "--format", "svg", "--out", p.to_str().unwrap()]);
        assert_schema("plot", &v);
        assert_eq!(v["closed"], true);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    // empty level set: header-only file, exit 2
    let e = dir.join("empty.csv");
    let v = err_json(&["plot", "(X^2+Y^2)^2", "--window", "0.5", "--samples", "32", "--out", e.to_str().unwrap()], 2);
    assert_eq!(v["error"], "EmptyLevelSet");
    assert_eq!(std::fs::read_to_string(&e).unwrap(), "x0,y0,x1,y1\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_override() {
    let single = bin().env("THUE_AREA_THREADS", "1").args(["area", "P(3)"]).output().unwrap();
    let auto = bin().env("THUE_AREA_THREADS", "0").args(["area", "P(3)"]).output().unwrap();
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, auto.stdout);
    let bad = bin().env("THUE_AREA_THREADS", "many").args(["area", "P(3)"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
