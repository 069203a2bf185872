use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schmidt"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("model.csv");
    let cfg = configs().join("model.json");
    let o = run(&["verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("alpha,h_x,lhs,rhs,ratio,smallness,excluded,lhs_kernel_num,lhs_kernel_den")
    );
    let third: Vec<&str> = lines.nth(2).unwrap().split(',').collect();
    assert_eq!(third[0], "3");
    assert_eq!(third[4], "2.00000000000");
    assert_eq!(&third[6..], &["none", "64", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("violations: 0"));
}

#[test]
fn verify_json_and_hyperplane_mode() {
    let cfg = configs().join("model.json");
    let o = run(&["verify", "--config", cfg.to_str().unwrap(), "--format", "json", "--hyperplane-mode"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["instances"].as_array().unwrap().len(), 20);
    assert_eq!(doc["summary"]["bound_constant"], "5/2");
    assert_eq!(doc["summary"]["violations"], 0);
    assert_eq!(doc["instances"][0]["multipliers"]["inf"][0], "2");

    // hyperplane mode rejects quadrics
    let six = configs().join("six_quadrics.json");
    let o = run(&["verify", "--config", six.to_str().unwrap(), "--hyperplane-mode"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n": 1, "N": 1, "epsilon": "1/2", "places": ["inf"], "alpha_range": [1, 20],
            "family": [{"degree": 1, "coefficients": [{"exponents": [1, 0], "num": [1], "den": [-5, 1]}]},
                       {"degree": 1, "coefficients": [{"exponents": [0, 1], "num": [1]}]}],
            "points": {"kind": "exponential", "bases": [1, 2]}}"#,
    )
    .unwrap();
    let o = run(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("denominator root at α=5"));
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn position_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dup.json");
    // x0, x0 share the zero (0:1), so {x0, x0} is not in general position
    std::fs::write(
        &cfg,
        r#"{"n": 1, "N": 1, "epsilon": "1/2", "places": ["inf", 2], "alpha_range": [1, 5],
            "family": [{"degree": 1, "coefficients": [{"exponents": [1, 0], "num": [1]}]},
                       {"degree": 1, "coefficients": [{"exponents": [1, 0], "num": [1]}]}],
            "points": {"kind": "exponential", "bases": [1, 2]}}"#,
    )
    .unwrap();
    let o = run(&["check-position", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("witness subset [1, 2]"));

    let six = configs().join("six_quadrics.json");
    let o = run(&["check-position", "--config", six.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NSubgeneral(3)"));
}

#[test]
fn reduce_subcommand() {
    let six = configs().join("six_quadrics.json");
    let o = run(&["reduce", "--config", six.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["triangular"], true);
    assert_eq!(doc["forms"].as_array().unwrap().len(), 3);
    assert_eq!(doc["failing_samples"].as_array().unwrap().len(), 0);
}

#[test]
fn filtration_and_choose_l() {
    let o = run(&["filtration", "-n", "1", "--forms", "x0^2", "-l", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["m"], serde_json::json!([2, 2, 1]));
    assert_eq!(doc["a"], 4);

    let o = run(&["filtration", "-n", "2", "-d", "1", "-l", "3"]);
    assert!(stdout(&o).contains("a: 10"));

    let o = run(&["choose-l", "-n", "1", "-d", "1", "--N", "1", "--epsilon", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("L: 3") && text.contains("ratio: 13/6"), "{text}");
}

#[test]
fn fmt_check_and_probe() {
    let six = configs().join("six_quadrics.json");
    let o = run(&["fmt-check", "--config", six.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["mismatches"], 0);
    assert!(doc["checked"].as_u64().unwrap() > 0);

    let o = run(&["probe", "--config", six.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("no constant-coefficient degeneracy up to degree 2"), "{text}");
    assert!(text.contains("limitation:"));
}
