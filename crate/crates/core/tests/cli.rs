use std::process::{Command, Output};

fn pinchlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinchlink"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_default_user() {
    let o = pinchlink(&["solve", "--ue", "15,5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("14.8299 m"), "{text}");
    assert!(text.contains("feasible"));
}

#[test]
fn solve_json_is_parseable() {
    let o = pinchlink(&["--gamma0", "30dB", "solve", "--ue", "5,10", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["proposed"]["total_power_w"].as_f64().unwrap() < v["benchmark2"]["total_power_w"].as_f64().unwrap());
    assert_eq!(v["benchmark2"]["x_pin_m"].as_f64().unwrap(), 0.0);
}

#[test]
fn sweep_writes_csv_and_gnuplot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    let o = pinchlink(&[
        "sweep",
        "--var",
        "gamma0",
        "--values",
        "10:2:30dB",
        "--samples",
        "50",
        "--out",
        out.to_str().unwrap(),
        "--gnuplot",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 11 * 3);
    let recs = pinchlink::experiments::parse_csv(&csv).unwrap();
    assert_eq!(recs.len(), 11);
    assert_eq!(recs[10].variable_value, 30.0);
    let gp = std::fs::read_to_string(dir.path().join("fig.gp")).unwrap();
    assert!(gp.contains("fig.csv"));
}

#[test]
fn distance_sweep_in_km() {
    let o = pinchlink(&[
        "sweep",
        "--var",
        "d1",
        "--values",
        "0.03,0.05km",
        "--samples",
        "10",
        "--schemes",
        "b2",
    ]);
    assert!(o.status.success());
    let recs = pinchlink::experiments::parse_csv(&stdout(&o)).unwrap();
    assert_eq!(
        recs.iter().map(|r| r.variable_value).collect::<Vec<_>>(),
        vec![30.0, 50.0]
    );
}

#[test]
fn verify_documented_run() {
    let o = pinchlink(&["verify", "--seed", "7", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("100 of 100"));
}

#[test]
fn verify_json_lines() {
    let o = pinchlink(&["verify", "--trials", "3", "--json"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines
        .iter()
        .all(|l| l["position"]["passed"] == true && l["power"]["passed"] == true));
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.conf");
    let dump = pinchlink(&["--alpha", "0.05", "--height", "5", "config-dump"]);
    std::fs::write(&path, &dump.stdout).unwrap();
    let again = pinchlink(&["--config", path.to_str().unwrap(), "config-dump"]);
    assert_eq!(dump.stdout, again.stdout);
    let cfg = pinchlink::SystemConfig::from_text(&stdout(&again)).unwrap();
    assert_eq!(cfg.waveguide_attenuation_per_m, 0.05);
}

#[test]
fn exit_codes() {
    assert_eq!(pinchlink(&["--help"]).status.code(), Some(0));
    assert_eq!(pinchlink(&["--version"]).status.code(), Some(0));
    assert_eq!(pinchlink(&["solve", "--ue", "100,100"]).status.code(), Some(2));
    assert_eq!(
        pinchlink(&["--config", "/no/such/file", "config-dump"]).status.code(),
        Some(2)
    );
    assert_eq!(pinchlink(&["frobnicate"]).status.code(), Some(2));
    let o = pinchlink(&["verify", "--trials", "2", "--step", "0.5", "--tol-position", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(pinchlink(&["solve", "--ue", "100,5"]).stderr).unwrap();
    assert!(err.contains("error:"), "{err}");
}
