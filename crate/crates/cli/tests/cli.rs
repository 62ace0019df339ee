//! End-to-end tests of the rlie binary: exit codes, text output,
//! canonical round trips, and JSON reports against the shipped schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rlie"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rlie")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn generate_parse_serialize_is_byte_identical() {
    let out = run(&["generate", "flat", "--p", "2", "--q", "4", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let parsed = rlie_core::io::parse_str(&text).unwrap();
    assert_eq!(rlie_core::io::canonical_string(&parsed), text);

    let again = run(&["generate", "flat", "--p", "2", "--q", "4", "--seed", "3"]);
    assert_eq!(stdout(&again), text, "same seed must give the same bytes");
}

#[test]
fn validate_passes_on_named_instances() {
    let path = tmp("h3.toml");
    let out = run(&["generate", "named", "heisenberg3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("VALID"));
}

#[test]
fn validate_fails_on_jacobi_violation() {
    let path = tmp("nonjacobi.toml");
    std::fs::write(
        &path,
        "name = \"broken\"\ndim = 3\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n\n[[bracket]]\ni = 1\nj = 2\nc = { 1 = 1.0 }\n",
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("INVALID"));
}

#[test]
fn validate_names_the_asymmetric_field() {
    let path = tmp("asym.toml");
    std::fs::write(
        &path,
        "name = \"asym\"\ndim = 2\nmetric = [\n  [1.0, 0.5],\n  [0.25, 1.0],\n]\n",
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("metric"));
}

#[test]
fn parse_and_io_failures_exit_2() {
    let path = tmp("bad.toml");
    std::fs::write(&path, "name = [").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let out = run(&["validate", tmp("no-such-file.toml").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn analyze_requires_a_metric() {
    let path = tmp("nometric.toml");
    std::fs::write(
        &path,
        "name = \"bare\"\ndim = 3\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n",
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("metric"));
}

#[test]
fn analyze_flat_and_curved_instances() {
    let e2 = tmp("e2.toml");
    run(&["generate", "named", "e2", "--out", e2.to_str().unwrap()]);
    let out = run(&["analyze", e2.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("RIEMANN-LIE: yes"));

    let so3 = tmp("so3.toml");
    run(&["generate", "named", "so3", "--out", so3.to_str().unwrap()]);
    let out = run(&["analyze", so3.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("RIEMANN-LIE: no"));
    assert!(text.contains("negative-definite"));
}

#[test]
fn analyze_indefinite_metric_prints_a_banner() {
    let path = tmp("lorentz.toml");
    std::fs::write(
        &path,
        "name = \"h3-lorentz\"\ndim = 3\nmetric = [\n  [1.0, 0.0, 0.0],\n  [0.0, 1.0, 0.0],\n  [0.0, 0.0, -1.0],\n]\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n",
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("pseudo-Riemannian"));
    assert!(text.contains("signature (2,1)"));
}

fn u2_with_subspace() -> PathBuf {
    let path = tmp("u2s.toml");
    let base = tmp("u2.toml");
    run(&["generate", "named", "u2", "--out", base.to_str().unwrap()]);
    let mut text = std::fs::read_to_string(&base).unwrap();
    text.push_str(
        "\n[subspace]\nbasis = [\n  [1.0, 0.0, 0.0, 0.0],\n  [0.0, 0.0, 0.0, 1.0],\n]\nomega = [\n  [0.0, 1.0],\n  [-1.0, 0.0],\n]\n",
    );
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn yb_construct_then_check_round_trip() {
    let src = u2_with_subspace();
    let constructed = tmp("u2r.toml");
    let out = run(&[
        "yb",
        src.to_str().unwrap(),
        "--construct",
        "--out",
        constructed.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = run(&["yb", constructed.to_str().unwrap(), "--check"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("YANG-BAXTER: yes"));
}

#[test]
fn yb_check_flags_a_non_solution() {
    let path = tmp("h3r.toml");
    std::fs::write(
        &path,
        "name = \"h3r\"\ndim = 3\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n\n[[bivector]]\ni = 0\nj = 1\nv = 1.0\n",
    )
    .unwrap();
    let out = run(&["yb", path.to_str().unwrap(), "--check"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("schouten norm: 1.000e0"));
    assert!(text.contains("YANG-BAXTER: no"));
}

#[test]
fn yb_requires_its_section() {
    let path = tmp("h3-bare.toml");
    std::fs::write(
        &path,
        "name = \"bare\"\ndim = 3\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n",
    )
    .unwrap();
    let out = run(&["yb", path.to_str().unwrap(), "--check"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("bivector"));
    let out = run(&["yb", path.to_str().unwrap(), "--construct"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("subspace"));
}

#[test]
fn bialgebra_certifies_the_compact_example() {
    let src = u2_with_subspace();
    let out = run(&["bialgebra", src.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("CERTIFIED: yes"));
    assert!(text.contains("primal riemann-lie: no"));
    assert!(text.contains("dual algebra riemann-lie: yes"));
}

#[test]
fn bialgebra_names_hypothesis_failures() {
    let path = tmp("so3-sub.toml");
    std::fs::write(
        &path,
        "name = \"so3-sub\"\ndim = 3\nmetric = [\n  [1.0, 0.0, 0.0],\n  [0.0, 1.0, 0.0],\n  [0.0, 0.0, 1.0],\n]\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n\n[[bracket]]\ni = 1\nj = 2\nc = { 0 = 1.0 }\n\n[[bracket]]\ni = 0\nj = 2\nc = { 1 = -1.0 }\n\n[subspace]\nbasis = [\n  [1.0, 0.0, 0.0],\n  [0.0, 1.0, 0.0],\n]\nomega = [\n  [0.0, 1.0],\n  [-1.0, 0.0],\n]\n",
    )
    .unwrap();
    let out = run(&["bialgebra", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("not abelian"));
}

#[test]
fn generate_rejects_bad_parameters() {
    let out = run(&["generate", "flat", "--p", "0", "--q", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn generate_metric_attaches_a_random_metric() {
    let base = tmp("so3-base.toml");
    run(&["generate", "named", "so3", "--out", base.to_str().unwrap()]);
    let with_metric = tmp("so3-rand.toml");
    let out = run(&[
        "generate",
        "metric",
        "--base",
        base.to_str().unwrap(),
        "--seed",
        "5",
        "--out",
        with_metric.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&["validate", with_metric.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("signature (3,0)"));
}

// --- JSON reports against the shipped schema ---------------------------

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn type_matches(ty: &str, value: &Value) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "number" => value.is_number(),
        "integer" => {
            value.is_i64() || value.is_u64() || value.as_f64().is_some_and(|x| x.fract() == 0.0)
        }
        "null" => value.is_null(),
        other => panic!("unhandled type keyword {other}"),
    }
}

fn check_schema(root: &Value, schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    let mut schema = schema;
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let key = reference
            .strip_prefix("#/$defs/")
            .unwrap_or_else(|| panic!("unsupported $ref {reference}"));
        schema = root
            .get("$defs")
            .and_then(|d| d.get(key))
            .unwrap_or_else(|| panic!("unresolved $ref {reference}"));
    }

    if let Some(ty) = schema.get("type") {
        let ok = match ty {
            Value::String(t) => type_matches(t, value),
            Value::Array(ts) => ts
                .iter()
                .any(|t| type_matches(t.as_str().unwrap(), value)),
            _ => panic!("bad type keyword"),
        };
        if !ok {
            errors.push(format!("{path}: type mismatch (expected {ty}, got {value})"));
            return;
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: {value} not in enum {allowed:?}"));
        }
    }
    if let (Some(obj), Some(props)) = (value.as_object(), schema.get("properties")) {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for name in required {
                let name = name.as_str().unwrap();
                if !obj.contains_key(name) {
                    errors.push(format!("{path}: missing required key {name}"));
                }
            }
        }
        let props = props.as_object().unwrap();
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if !props.contains_key(key) {
                    errors.push(format!("{path}: unexpected key {key}"));
                }
            }
        }
        for (key, sub) in props {
            if let Some(v) = obj.get(key) {
                check_schema(root, sub, v, &format!("{path}.{key}"), errors);
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            check_schema(root, items, v, &format!("{path}[{i}]"), errors);
        }
    }
}

fn assert_valid_report(out: &Output) -> Value {
    let text = stdout(out);
    let value: Value = serde_json::from_str(&text).expect("report is JSON");
    let root = schema();
    let mut errors = Vec::new();
    check_schema(&root, &root, &value, "$", &mut errors);
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
    value
}

#[test]
fn json_reports_validate_against_the_schema() {
    let h3 = tmp("h3-json.toml");
    run(&["generate", "named", "heisenberg3", "--out", h3.to_str().unwrap()]);
    let u2s = u2_with_subspace();

    let v = assert_valid_report(&run(&["validate", h3.to_str().unwrap(), "--json"]));
    assert_eq!(v["command"], "validate");
    assert_eq!(v["status"], "ok");

    let v = assert_valid_report(&run(&["analyze", h3.to_str().unwrap(), "--json"]));
    assert_eq!(v["classification"]["is_riemann_lie"], false);
    assert!(v["structure"]["killing_verdict"].is_string());

    let lorentz = tmp("lorentz-json.toml");
    std::fs::write(
        &lorentz,
        "name = \"h3-lorentz\"\ndim = 3\nmetric = [\n  [1.0, 0.0, 0.0],\n  [0.0, 0.0, 1.0],\n  [0.0, 1.0, 0.0],\n]\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n",
    )
    .unwrap();
    let v = assert_valid_report(&run(&["analyze", lorentz.to_str().unwrap(), "--json"]));
    assert_eq!(v["classification"]["riemannian"], false);
    assert!(v["classification"].get("consistent").is_none());

    let h3r = tmp("h3r-json.toml");
    std::fs::write(
        &h3r,
        "name = \"h3r\"\ndim = 3\nmetric = [\n  [1.0, 0.0, 0.0],\n  [0.0, 1.0, 0.0],\n  [0.0, 0.0, 1.0],\n]\n\n[[bracket]]\ni = 0\nj = 1\nc = { 2 = 1.0 }\n\n[[bivector]]\ni = 0\nj = 1\nv = 1.0\n",
    )
    .unwrap();
    let v = assert_valid_report(&run(&["yb", h3r.to_str().unwrap(), "--check", "--json"]));
    assert_eq!(v["yang_baxter"]["solution"]["verdict_schouten"], false);
    assert_eq!(v["yang_baxter"]["solution"]["verdicts_agree"], true);

    let v = assert_valid_report(&run(&["bialgebra", u2s.to_str().unwrap(), "--json"]));
    assert_eq!(v["bialgebra"]["certified"], true);
    assert_eq!(v["bialgebra"]["dual_classification"]["is_riemann_lie"], true);

    let v = assert_valid_report(&run(&[
        "generate", "flat", "--p", "2", "--q", "4", "--seed", "3", "--json",
    ]));
    assert_eq!(v["generated"]["dim"], 6);

    // failed runs still produce schema-conforming reports
    let out = run(&["analyze", h3r.to_str().unwrap(), "--json", "--tol", "bogus"]);
    assert_ne!(code(&out), 0);

    let nometric = tmp("nometric-json.toml");
    std::fs::write(&nometric, "name = \"x\"\ndim = 2\n").unwrap();
    let out = run(&["analyze", nometric.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 1);
    let v = assert_valid_report(&out);
    assert_eq!(v["status"], "failed");
}
