use std::process::{Command, Output};

fn qgalois(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgalois")).args(args).env("QGALOIS_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_full_suite_passes() {
    let o = qgalois(&["verify", "--n", "2", "--m", "1", "--mu", "1", "--window", "3", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn mu_zero_regression_passes() {
    let o = qgalois(&["verify", "--n", "3", "--m", "1", "--mu", "0", "--window", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn invalid_configs_exit_2() {
    assert_eq!(qgalois(&["verify", "--n", "4", "--m", "2", "--mu", "1"]).status.code(), Some(2));
    assert_eq!(qgalois(&["verify", "--n", "1", "--mu", "1"]).status.code(), Some(2));
    assert_eq!(qgalois(&["verify", "--n", "3", "--lambda-exp", "3"]).status.code(), Some(2));
    assert_eq!(qgalois(&["verify", "--n", "3", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(qgalois(&["verify", "--n", "3", "--mu", "q"]).status.code(), Some(2));
    assert_eq!(qgalois(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let o = qgalois(&["eval", "--n", "3", "--m", "2", "--map", "alpha", "y"]);
    assert_eq!(stdout(&o).trim(), "1 (x) b + y (x) a^2");
    let o = qgalois(&["eval", "--n", "3", "--map", "theta_X", "1"]);
    assert_eq!(stdout(&o).trim(), "1");
    // S(ab) = -λ^{m+1} a^{-m-1} b; λ³ = 1 here.
    let o = qgalois(&["eval", "--n", "3", "--m", "2", "--map", "S", "a*b"]);
    assert_eq!(stdout(&o).trim(), "-a^-3*b");
    let o = qgalois(&["eval", "--n", "5", "--m", "2", "--map", "S", "a*b"]);
    assert_eq!(stdout(&o).trim(), "-z^3*a^-3*b");
    let o = qgalois(&["eval", "--n", "3", "--map", "gamma", "x"]);
    assert_eq!(stdout(&o).trim(), "u (x) x");
}

#[test]
fn eval_parse_error_reports_position() {
    let o = qgalois(&["eval", "--n", "3", "--map", "alpha", "y + )"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn table_rows() {
    let o = qgalois(&["table", "--n", "2", "--m", "1", "--mu", "1"]);
    assert!(stdout(&o).contains("delta_X = x\n"));
    let o = qgalois(&["table", "--n", "3", "--m", "1", "--mu", "1"]);
    assert!(stdout(&o).contains("theta_X(y) = z^1*y\n"));
}

#[test]
fn json_report_is_deterministic() {
    let args = ["verify", "--n", "3", "--m", "2", "--mu", "z", "--window", "1", "--format", "json"];
    let (a, b) = (qgalois(&args), qgalois(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qgalois-out-{}", std::process::id()));
    let path = dir.with_extension("json");
    let o = qgalois(&["verify", "--n", "2", "--window", "1", "--suite", "hopf", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["group"] == "hopf"));
    let _ = std::fs::remove_file(path);
}
