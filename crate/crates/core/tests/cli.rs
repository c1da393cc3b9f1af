use std::fs;
use std::process::{Command, Output};

fn ceo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ceo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = ceo(&[
        "sweep",
        "--channel",
        "window:0.05",
        "--peaks",
        "-0.05,0.05",
        "--L-list",
        "10,20,40",
        "--trials",
        "200",
        "--grid",
        "8,32,96",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("L,"));
    assert_eq!(lines[1].split(',').count(), 8);
    assert!(String::from_utf8_lossy(&o.stderr).contains("fitted exponent"));
}

#[test]
fn simulate_single_row() {
    let o = ceo(&[
        "simulate", "--agents", "25", "--trials", "100", "--grid", "8,32,96",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("25,"));
}

#[test]
fn check_property_reports_certificate() {
    let o = ceo(&["check-property"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["lipschitz_k"].as_f64().unwrap() > 0.0);
    assert!(v["endpoint_floor_delta"].as_f64().unwrap() > 0.0);
}

#[test]
fn bounds_prints_json_and_csv() {
    let o = ceo(&["bounds", "--grid", "8,32,96", "--theta-grid", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("\"beta_upper\""));
    assert!(text.contains("beta_upper,beta_lower,cmi_nats,cmi_bits"));
}

#[test]
fn certificate_violation_exit_code() {
    let o = ceo(&["check-property", "--peaks", "0,100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_parameter_exit_code() {
    assert_eq!(ceo(&["chernoff", "--alpha", "0.3"]).status.code(), Some(4));
    assert_eq!(
        ceo(&["sweep", "--L-list", "1,10", "--trials", "10"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        ceo(&["chernoff", "--config", "/nonexistent/ceo.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{"theta_grid": 4, "channel": "window:0.1"}"#).unwrap();
    let from_file = ceo(&["chernoff", "--config", path.to_str().unwrap()]);
    assert!(from_file.status.success());
    let text = stdout(&from_file);
    assert_eq!(text.lines().count(), 5);
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap() > 4.9));
    let overridden = ceo(&[
        "chernoff",
        "--config",
        path.to_str().unwrap(),
        "--theta-grid",
        "6",
    ]);
    assert_eq!(stdout(&overridden).lines().count(), 7);
}

#[test]
fn unknown_config_keys_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"thetagrid": 4}"#).unwrap();
    assert_eq!(
        ceo(&["chernoff", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}
