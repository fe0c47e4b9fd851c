use std::process::Command;

use serde_json::Value;

fn equichi(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_equichi")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn schema() -> Value {
    let (code, text, _) = equichi(&["schema"]);
    assert_eq!(code, 0);
    serde_json::from_str(&text).expect("schema is JSON")
}

fn bundled_names() -> Vec<String> {
    let (code, text, _) = equichi(&["bundled"]);
    assert_eq!(code, 0);
    text.lines().map(str::to_string).collect()
}

#[test]
fn lists_at_least_eight_bundled_scenarios() {
    let names = bundled_names();
    assert!(names.len() >= 8);
    for want in ["p5_smooth", "p5_nodal", "etale_nonfree", "pathology_trivial_component", "cycle_of_lines", "theta_graph", "free_action_random"] {
        assert!(names.iter().any(|n| n == want), "{want}");
    }
    assert!(names.iter().any(|n| n.starts_with("hyperelliptic")));
}

#[test]
fn schema_is_byte_stable_and_validates_every_bundled_scenario() {
    let (_, a, _) = equichi(&["schema"]);
    let (_, b, _) = equichi(&["schema"]);
    assert_eq!(a, b);
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    for name in bundled_names() {
        let (code, text, _) = equichi(&["bundled", &name]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&text).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let bad = [
        r#"{"name": "x"}"#,
        r#"{"name": "x", "group": {"builtin": "cyclic", "n": 3}, "components": [{"genus": 0}], "sheaf": {"mode": "omega"}}"#,
        r#"{"name": "x", "random": {"family": "free", "law": "free", "count": 1}, "extra": true}"#,
    ];
    for text in bad {
        let doc: Value = serde_json::from_str(text).unwrap();
        assert!(!validator.is_valid(&doc), "{text}");
    }
}

#[test]
fn all_bundled_pass_under_check_and_echo_a_valid_scenario() {
    let (code, text, err) = equichi(&["run", "--bundled", "--check", "--jobs", "4"]);
    assert_eq!(code, 0, "{err}\n{text}");
    let reports: Vec<Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), bundled_names().len());
    let validator = jsonschema::validator_for(&schema()).unwrap();
    for r in &reports {
        assert_eq!(r["passed"], Value::Bool(true));
        assert!(validator.is_valid(&r["scenario"]), "{}", r["name"]);
    }
}

#[test]
fn json_reports_are_byte_identical_across_runs_and_job_counts() {
    let (_, a, _) = equichi(&["run", "--bundled", "--check", "--jobs", "1"]);
    let (_, b, _) = equichi(&["run", "--bundled", "--check", "--jobs", "3"]);
    assert_eq!(a, b);
}

#[test]
fn hyperelliptic_sweep_in_text_format() {
    let (code, text, _) = equichi(&["run", "--bundled", "--check", "--format", "text", "hyperelliptic_g3"]);
    assert_eq!(code, 0);
    for q in 0..=6 {
        assert!(text.contains(&format!("[pass] expect.sweep[{q}]")), "{text}");
    }
    assert!(text.contains("result: pass"));
}

#[test]
fn p5_nodal_check_reports_oracle_block() {
    let (code, text, _) = equichi(&["run", "--bundled", "--check", "p5_nodal"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["results"]["def_dim"]["value"], 1);
    let checks = r["verified"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["check"] == "oracle.residues" && c["passed"] == true));
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn malformed_file_is_a_schema_error_with_nonzero_exit() {
    let dir = std::env::temp_dir().join(format!("equichi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("malformed.json");
    std::fs::write(&path, r#"{"name": "m", "group": {"builtin": "cyclic"}, "components": "none"}"#).unwrap();
    let (code, text, _) = equichi(&["run", path.to_str().unwrap()]);
    assert_ne!(code, 0);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["error"]["code"], "schema_error");
    let (code, _, err) = equichi(&["run", "--format", "text", path.to_str().unwrap()]);
    assert_ne!(code, 0);
    let doc: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(doc["error"]["code"], "schema_error");
}

#[test]
fn failed_expectation_exits_nonzero() {
    let (_, text, _) = equichi(&["bundled", "p5_smooth"]);
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["expect"]["def_dim"] = Value::from(7);
    let dir = std::env::temp_dir().join(format!("equichi-cli-wrong-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, text, _) = equichi(&["run", "--check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["passed"], false);
    // Without --check, expectations are not compared.
    let (code, _, _) = equichi(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn seed_comes_from_the_environment_and_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_equichi"))
        .args(["run", "--bundled", "free_action_random"])
        .env("EQUICHI_SEED", "99")
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["results"]["random"]["seed"], 99);
}
