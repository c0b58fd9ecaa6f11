use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn entwit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entwit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn document(args: &[&str]) -> Value {
    let out = entwit(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn scratch_file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn sample_invocations() -> Vec<Vec<String>> {
    let state = scratch_file(
        "squeezed_state.json",
        r#"{"family": "squeezed", "params": {"lambda": 0.3}}"#,
    );
    let ops = scratch_file(
        "block_ops.json",
        r#"{"factors": [["blockx", "blocky"], ["blockx", "blocky"]]}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["cmatrix", "--n", "200"],
        vec!["cmatrix", "--n", "20", "--p", "0.5", "--tol", "1e-12"],
        vec!["psi2", "--scan", "50"],
        vec!["mixture", "--p", "0.5", "--coeffs", "0.99,0.1"],
        vec![
            "mixture",
            "--p",
            "1",
            "--coeffs",
            "-0.9,-0.1,0.01",
            "--cutoff",
            "12",
        ],
        vec!["squeezed", "--lambda", "0.5"],
        vec![
            "bell",
            "--parties",
            "2",
            "--condition",
            "ramanujan",
            "--n",
            "4",
        ],
        vec!["bell", "--parties", "4", "--condition", "variance"],
        vec!["bell", "--parties", "2", "--condition", "uffink"],
        vec!["schmidt", "--alpha", "-0.6,0", "--beta", "0,0.8"],
        vec!["identity", "--name", "complex_norm"],
        vec!["identity", "--name", "ramanujan", "--n", "3"],
        vec![
            "eval",
            "--expr-lhs",
            "(a*b - a'*b')^2 + (a*b' + a'*b)^2",
            "--expr-rhs",
            "(a^2 + a'^2)*(b^2 + b'^2)",
        ],
        vec!["eval", "--expr-lhs", "-a", "--expr-rhs", "a"],
        vec![
            "witness",
            "--state",
            &state,
            "--ops",
            &ops,
            "--condition",
            "variance_product",
        ],
        vec![
            "witness",
            "--state",
            r#"{"family": "bell", "params": {"n": 3}}"#,
            "--ops",
            r#"{"factors": [["sx", "sy"], ["sx", "sy"], ["sx", "sy"]]}"#,
            "--condition",
            "multipartite",
        ],
        vec![
            "witness",
            "--state",
            r#"{"family": "vacuum_mixture", "params": {"p": 0.5, "c": [0.8, 0.6]}, "cutoff": 8}"#,
            "--ops",
            r#"{"factors": [["x", "p"], ["p", "x"]]}"#,
            "--condition",
            "four_variance",
        ],
    ];
    cases
        .into_iter()
        .map(|c| c.into_iter().map(String::from).collect())
        .collect()
}

#[test]
fn every_report_matches_the_schema() {
    let validator = schema();
    for args in sample_invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let doc = document(&args);
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(doc["command"], args[0]);
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let validator = schema();
    let mut doc = document(&["bell", "--parties", "2", "--condition", "ramanujan"]);
    assert!(validator.is_valid(&doc));
    doc["results"]["report"]["violated"] = Value::String("yes".into());
    assert!(!validator.is_valid(&doc));
    let mut doc = document(&["identity", "--name", "ramanujan", "--n", "2"]);
    doc["results"].as_object_mut().unwrap().remove("valid");
    assert!(!validator.is_valid(&doc));
}

#[test]
fn results_are_deterministic() {
    for args in sample_invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = entwit(&args);
        let second = entwit(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn reference_values_through_the_binary() {
    let doc = document(&["cmatrix", "--n", "200"]);
    assert!((doc["results"]["lambda_min"].as_f64().unwrap() + 0.04495).abs() < 5e-4);
    assert!((doc["results"]["V_max"].as_f64().unwrap() - 1.2192).abs() < 1e-3);

    let doc = document(&["identity", "--name", "ramanujan", "--n", "4"]);
    assert_eq!(doc["results"]["valid"], Value::Bool(true));

    let doc = document(&[
        "bell",
        "--parties",
        "2",
        "--condition",
        "ramanujan",
        "--n",
        "2",
    ]);
    let r = &doc["results"]["report"];
    assert_eq!(r["lhs"].as_f64(), Some(6.0));
    assert_eq!(r["rhs"].as_f64(), Some(2.0));
    assert_eq!(r["violated"], Value::Bool(true));

    let doc = document(&["squeezed", "--lambda", "0.3"]);
    assert!(doc["results"]["V_abs_diff"].as_f64().unwrap() < 1e-6);
    assert!(doc["meta"]["cutoffs"]["mode"]
        .as_u64()
        .unwrap()
        .is_multiple_of(2));
}

#[test]
fn numbers_carry_at_most_twelve_significant_digits() {
    let doc = document(&["psi2", "--scan", "7"]);
    for v in doc["results"]["values"].as_array().unwrap() {
        let x = v.as_f64().unwrap();
        let twelve: f64 = format!("{x:.11e}").parse().unwrap();
        assert_eq!(x, twelve);
    }
}

#[test]
fn exit_codes() {
    // usage errors
    for args in [
        vec!["frobnicate"],
        vec!["cmatrix"],
        vec!["cmatrix", "--n", "ten"],
        vec!["bell", "--parties", "2", "--condition", "ppt"],
        vec!["identity", "--name", "euler"],
    ] {
        assert_eq!(entwit(&args).status.code(), Some(2), "{args:?}");
    }
    // computation errors
    for args in [
        vec!["cmatrix", "--n", "10", "--p", "2"],
        vec!["psi2", "--scan", "1"],
        vec!["squeezed", "--lambda", "1.5"],
        vec!["squeezed", "--lambda", "0.5", "--cutoff", "7"],
        vec!["schmidt", "--alpha", "1,0", "--beta", "1,0"],
        vec![
            "bell",
            "--parties",
            "2",
            "--condition",
            "ramanujan",
            "--n",
            "3",
        ],
        vec!["identity", "--name", "ramanujan", "--n", "0"],
        vec!["eval", "--expr-lhs", "a + c", "--expr-rhs", "a"],
        vec![
            "witness",
            "--state",
            "/nonexistent/state.json",
            "--ops",
            "{}",
            "--condition",
            "uffink",
        ],
        vec![
            "witness",
            "--state",
            r#"{"family": "bell", "params": {"n": 2}}"#,
            "--ops",
            r#"{"factors": [["sx", "sy"]]}"#,
            "--condition",
            "uffink",
        ],
    ] {
        let out = entwit(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn help_documents_every_flag() {
    let expected: [(&str, &[&str]); 9] = [
        ("cmatrix", &["--n", "--p", "--tol"]),
        ("psi2", &["--scan"]),
        ("mixture", &["--p", "--coeffs", "--cutoff"]),
        ("squeezed", &["--lambda", "--cutoff"]),
        ("bell", &["--parties", "--condition", "--n"]),
        ("schmidt", &["--alpha", "--beta"]),
        ("identity", &["--name", "--n"]),
        ("eval", &["--expr-lhs", "--expr-rhs"]),
        ("witness", &["--state", "--ops", "--condition", "--n"]),
    ];
    for (sub, flags) in expected {
        let out = entwit(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub}");
        let text = String::from_utf8_lossy(&out.stdout);
        for flag in flags {
            assert!(text.contains(flag), "{sub} --help lacks {flag}");
        }
    }
    assert_eq!(entwit(&["--help"]).status.code(), Some(0));
}
