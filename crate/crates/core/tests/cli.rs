use std::fs;
use std::process::{Command, Output};

use filiform::render::SystemDocument;
use filiform::system::{system_finite, XMode};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filiform")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn gen_is_deterministic() {
    for format in ["text", "json", "cas"] {
        let a = run(&["gen", "--dim", "14", "--format", format]);
        let b = run(&["gen", "--dim", "14", "--format", format]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn gen_json_reads_back() {
    let o = run(&["gen", "--dim", "9", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = SystemDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.equations.len(), 1);
    assert_eq!(doc.equations[0].label, (2, 3, 0));

    let o = run(&["gen", "--dim", "12", "--x", "1", "--format", "json"]);
    let doc = SystemDocument::from_json(&stdout(&o)).unwrap();
    let sys = system_finite(12, XMode::Fixed1).unwrap();
    let expected: Vec<_> = sys.equations.iter().map(|e| (e.label, e.poly.clone())).collect();
    assert_eq!(doc.polynomials().unwrap(), expected);
}

#[test]
fn gen_truncated_text() {
    let o = run(&["gen", "--truncate", "11"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("F_{2,3,0} = "));
    assert!(text.contains("F_{2,4,0} = "));
    assert_eq!(text.lines().count(), 1 + 4);
}

#[test]
fn gen_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m12.txt");
    let o = run(&["gen", "--dim", "12", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("# M_Fil(12), x = free: 8 equations in 21 variables"));
}

#[test]
fn dims_report() {
    for (n, eqs, vars) in [("9", "1", "9"), ("10", "3", "12"), ("12", "8", "20"), ("14", "18", "30")] {
        let o = run(&["dims", "--dim", n, "--json"]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["num_eqs"].to_string(), eqs, "n={n}");
        assert_eq!(v["num_vars"].to_string(), vars, "n={n}");
    }
}

#[test]
fn check_known_solutions() {
    for args in [
        &["check", "--dim", "12", "--known", "m2"][..],
        &["check", "--dim", "13", "--known", "L1", "--t=-3/5"],
        &["check", "--dim", "16", "--known", "L1-lacuna2"],
        &["check", "--dim", "16", "--known", "mk", "--k", "5"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["verdict"], "verified");
    }
}

#[test]
fn check_reports_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    fs::write(&path, r#"{"entries": [{"j": 3, "s": 0, "value": "1"}]}"#).unwrap();
    let o = run(&["check", "--dim", "9", "--assign", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "failed");
    assert_eq!(v["residuals"][0]["label"], serde_json::json!([2, 3, 0]));
    assert_eq!(v["residuals"][0]["value"], "3");
    assert!(!v["jacobi"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["fixture", "--name", "nope", "--dim", "8"])), 2);
    assert_eq!(code(&run(&["check", "--dim", "9", "--known", "nope"])), 2);
    assert_eq!(code(&run(&["gen"])), 2);
    assert_eq!(code(&run(&["gen", "--dim", "12", "--x", "2"])), 2);
    assert_eq!(code(&run(&["gen", "--dim", "2"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("out.json");
    assert_eq!(code(&run(&["gen", "--dim", "9", "--output", out.to_str().unwrap()])), 3);
    let missing = dir.path().join("none.json");
    assert_eq!(code(&run(&["check", "--dim", "9", "--assign", missing.to_str().unwrap()])), 3);
}

#[test]
fn fixtures() {
    let o = run(&["fixture", "--name", "m1", "--dim", "8"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.to_string().contains("m1"));
    for args in [
        &["fixture", "--name", "m2", "--dim", "9"][..],
        &["fixture", "--name", "mk", "--k", "4", "--dim", "12"],
        &["fixture", "--name", "lacuna-of", "--base", "L1", "--s", "2", "--dim", "12"],
    ] {
        assert_eq!(code(&run(args)), 0, "{args:?}");
    }
    assert_eq!(code(&run(&["fixture", "--name", "mk", "--dim", "12"])), 2);
}

#[test]
fn verify_oracle_command() {
    let o = run(&["verify-oracle", "--max-total", "17"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("0 differences\n"));
    assert_eq!(code(&run(&["verify-oracle", "--dim", "12"])), 0);
}
