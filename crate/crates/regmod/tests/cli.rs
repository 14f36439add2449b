use std::process::{Command, Output};

fn regmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regmod")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const LIGHT: [&str; 4] = ["--samples", "300", "--steps", "6"];

#[test]
fn estimate_json_report() {
    let mut args = vec!["estimate", "--example", "orthogonal", "--kinds", "sub", "--q", "1"];
    args.extend(LIGHT);
    let o = regmod(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "estimate");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["kind"], "sub");
    assert_eq!(rows[0]["verdict"], "positive");
    assert!((rows[0]["value"].as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
    assert_eq!(rows[0]["wallclock_ms"], 0);
    assert_eq!(rows[0]["seed"], 42);
}

#[test]
fn estimate_csv_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("pair.json");
    std::fs::write(
        &spec,
        r#"{"space":{"dim":2},"sets":[{"kind":"halfspace","normal":[0,1],"offset":0},{"kind":"halfspace","normal":[1,0],"offset":0}],"point":[0,0]}"#,
    )
    .unwrap();
    let out = dir.path().join("r.csv");
    let mut args = vec!["estimate", "--spec", spec.to_str().unwrap(), "--kinds", "semi", "--q", "1", "--format", "csv", "--out", out.to_str().unwrap()];
    args.extend(LIGHT);
    let o = regmod(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "collection,q,kind,method,value,verdict,uncertainty,wallclock_ms,seed");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[2], "semi");
    assert_eq!(row[5], "positive");
}

#[test]
fn exit_codes() {
    assert_eq!(regmod(&["estimate", "--example", "9.9"]).status.code(), Some(2));
    assert_eq!(regmod(&["estimate", "--example", "2.1", "--kinds", "bogus"]).status.code(), Some(2));
    assert_eq!(regmod(&["estimate", "--example", "2.1", "--q", "-1"]).status.code(), Some(2));
    assert_eq!(regmod(&["estimate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(regmod(&["estimate", "--spec", bad.to_str().unwrap()]).status.code(), Some(2));
    let off = dir.path().join("off.json");
    std::fs::write(&off, r#"{"space":{"dim":2},"sets":[{"kind":"halfspace","normal":[0,1],"offset":1},{"kind":"whole_space"}],"point":[0,0]}"#).unwrap();
    let o = regmod(&["estimate", "--spec", off.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("base point"));
}

#[test]
fn reproduce_reports_targets() {
    let o = regmod(&["reproduce", "--example", "2.3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().ends_with(",target,status"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn sweep_reports_critical_exponent() {
    let mut args = vec!["sweep", "--example", "2.4", "--q", "1,2,2.5", "--format", "csv"];
    args.extend(LIGHT);
    let o = regmod(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[3], "critical_exponent");
    assert_eq!(last[4], "2");
}
