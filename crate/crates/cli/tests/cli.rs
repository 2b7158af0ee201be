use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn sdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdg")).args(args).output().expect("sdg runs")
}

fn schema(name: &str) -> Value {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs `sdg`, expects success and output valid under the subcommand's schema.
fn json_of(args: &[&str]) -> Value {
    let out = sdg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    let validator = jsonschema::validator_for(&schema(args[0])).unwrap();
    if let Err(e) = validator.validate(&value) {
        panic!("{args:?}: output violates schema: {e}\n{value:#}");
    }
    value
}

#[test]
fn jet_on_dual_numbers() {
    let v = json_of(&["jet", "--expr", "x^2", "--base", "x=1", "--algebra", "D"]);
    assert_eq!(v, json!({"value": "1", "coeffs": {"x": "2"}}));
    let v = json_of(&["jet", "--expr", "x^3*y", "--base", "x=1/2,y=3", "--algebra", "D(2)"]);
    assert_eq!(v, json!({"value": "3/8", "coeffs": {"x": "9/4", "y": "1/8"}}));
}

#[test]
fn jet_numeric_mode() {
    let v = json_of(&["jet", "--expr", "exp(x)", "--base", "x=1", "--precision", "128"]);
    let value: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((value - std::f64::consts::E).abs() < 1e-15);
    // exact mode cannot represent e
    assert_eq!(sdg(&["jet", "--expr", "exp(x)", "--base", "x=1"]).status.code(), Some(1));
}

#[test]
fn laplacian_through_jet() {
    let v = json_of(&["jet", "--expr", "x^2*y + y^3", "--base", "x=1,y=2", "--algebra", "DL"]);
    // x1^2 carries half the Laplacian: (2y + 6y) / 2 at y = 2
    assert_eq!(v["coeffs"]["x^2"], "8");
}

#[test]
fn courant_envelope() {
    let v = json_of(&["envelope", "--family", "y-(x-t)^3", "--exact"]);
    assert_eq!(v, json!({"eliminant": "27*y^2", "degenerate": false}));
    let v = json_of(&["envelope", "--family", "y-(x-t)^3", "--exact", "--squarefree"]);
    assert_eq!(v["eliminant"], "27*y");
    let v = json_of(&["envelope", "--family", "(x-t)^2+y^2-1", "--sample", "-1:1:5"]);
    assert!(!v["samples"].as_array().unwrap().is_empty());
    let v = json_of(&["envelope", "--family", "x^2+y^2-1", "--exact"]);
    assert_eq!(v["degenerate"], true);
}

#[test]
fn envelope_rejects_exact_for_transcendental_families() {
    let out = sdg(&["envelope", "--family", "y - sin(x - t)", "--exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn weil_descriptions() {
    let v = json_of(&["weil", "--algebra", "D⊗D", "--element", "x1+x2", "--element", "x1+x2"]);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["product"]["x1*x2"], "2");
    let v = json_of(&["weil", "--algebra", "Dk(3,2)"]);
    assert_eq!(v["dim"], 10);
    let v = json_of(&["weil", "--algebra", "D(2)", "--monad", "x1 + x2^2"]);
    assert_eq!(v["monad"], true);
}

#[test]
fn bianchi_suite_is_reproducible() {
    let args = ["verify", "--suite", "bianchi", "--group", "S3", "--trials", "200", "--seed", "42"];
    let v = json_of(&args);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["seed"], 42);
    let first = sdg(&args).stdout;
    assert_eq!(first, sdg(&args).stdout);
    let other = sdg(&["verify", "--suite", "bianchi", "--group", "S3", "--trials", "200", "--seed", "43"]).stdout;
    assert_ne!(first, other);
    // the seed heads the summary
    let text = String::from_utf8(first).unwrap();
    assert!(text.find("\"seed\"").unwrap() < text.find("\"failures\"").unwrap());
}

#[test]
fn other_suites_pass() {
    for (suite, group) in [("involutive", "Z3"), ("coboundary", "Q8"), ("bianchi", "S4"), ("ring", "S3")] {
        let v = json_of(&["verify", "--suite", suite, "--group", group, "--trials", "50", "--seed", "7"]);
        assert_eq!(v["failures"], 0, "{suite}");
        assert!(v["checked"].as_u64().unwrap() > 0, "{suite}");
    }
}

#[test]
fn forms_report() {
    let v = json_of(&["forms", "--model", &data("exact_form.json")]);
    assert_eq!((v["closed"].clone(), v["involutive"].clone()), (json!(true), json!(true)));
    let v = json_of(&["forms", "--model", &data("twisted_triangle.json")]);
    assert_eq!(v["closed"], false);
    assert_eq!(v["coboundary"].as_array().unwrap().len(), 6);
}

#[test]
fn connection_report() {
    let v = json_of(&["connection", "--model", &data("twisted_triangle.json")]);
    assert_eq!(v["connection"]["flat"], false);
    assert_eq!(v["connection"]["bianchi_failures"], json!([]));
    let v = json_of(&["connection", "--model", &data("reflection.json"), "--geodesic", "0,1"]);
    assert_eq!(v["lambda"]["symmetric"], true);
    assert_eq!(v["lambda"]["geodesic"], true);
    assert_eq!(sdg(&["connection", "--model", &data("exact_form.json")]).status.code(), Some(1));
}

#[test]
fn wavefront_offsets() {
    let front = data("ellipse.csv");
    let v = json_of(&["wavefront", "--front", &front, "--s", "0.2", "--orientation", "inner"]);
    assert_eq!(v["has_cusps"], false);
    // the smallest curvature radius of this ellipse is 1/2
    let v = json_of(&["wavefront", "--front", &front, "--s", "0.7", "--orientation", "inner"]);
    assert_eq!(v["has_cusps"], true);
    let v = json_of(&["wavefront", "--front", &front, "--s", "0.7", "--orientation", "outer"]);
    assert_eq!(v["has_cusps"], false);

    let dir = std::env::temp_dir().join(format!("sdg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("offset.csv");
    let out = out_path.to_string_lossy().into_owned();
    json_of(&["wavefront", "--front", &front, "--s", "0.5", "--out", &out]);
    // offsetting the offset by the rest of the way matches one step
    json_of(&["wavefront", "--front", &out, "--s", "0.25", "--out", &out]);
    let csv = sdg(&["wavefront", "--front", &front, "--s", "0.75", "--format", "csv"]);
    assert!(csv.status.success());
    let rows = |text: &str| -> Vec<Vec<f64>> {
        text.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
    };
    let (twice, once) = (rows(&std::fs::read_to_string(&out_path).unwrap()), rows(&String::from_utf8(csv.stdout).unwrap()));
    assert_eq!(twice.len(), 64);
    for (p, q) in twice.iter().zip(&once) {
        assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-9);
    }
    let report: Value = serde_json::from_slice(&csv.stderr).unwrap();
    assert_eq!(report["vertices"], 64);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["jet", "--expr", "x"][..],
        &["jet", "--expr", "x", "--base", "q=1"],
        &["jet", "--expr", "x", "--base", "x=1", "--colour", "red"],
        &["verify", "--suite", "nope"],
        &["wavefront", "--front", "f.csv", "--s", "1", "--orientation", "sideways"],
        &["frobnicate"],
    ] {
        let out = sdg(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(sdg(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_with_one() {
    for args in [
        &["jet", "--expr", "1/x", "--base", "x=0"][..],
        &["jet", "--expr", "x*y", "--base", "x=1"],
        &["weil", "--algebra", "E(7)"],
        &["wavefront", "--front", "/nonexistent/front.csv", "--s", "1"],
        &["wavefront", "--front", &data("ellipse.csv"), "--s", "-1"],
        &["verify", "--suite", "bianchi", "--group", "A5"],
    ] {
        let out = sdg(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
}
