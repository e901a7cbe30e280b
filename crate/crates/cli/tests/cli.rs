use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rcmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcmlab")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

#[test]
fn heatkernel_one_step_pair() {
    let v = json_of(&rcmlab(&["heatkernel", "--T", "1", "--gamma", "0", "--size", "8", "--deterministic"]));
    assert_eq!(v["result"]["p_return"].as_f64().unwrap(), 0.25);
    assert!(v.get("timestamp").is_none());
}

#[test]
fn four_cycle_fixture() {
    let f = fixture("four_cycle.csv");
    let v = json_of(&rcmlab(&["resistance", "--network", &f, "--source", "0,0", "--target", "1,0"]));
    assert!((v["result"]["value"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert!(v["timestamp"].is_u64());
}

#[test]
fn disconnected_pair_is_infinite() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("two.csv");
    std::fs::write(&p, "x1,y1,x2,y2,log_conductance\n0,0,1,0,0\n5,5,6,5,0\n").unwrap();
    let v = json_of(&rcmlab(&["resistance", "--network", p.to_str().unwrap(), "--source", "0,0", "--target", "6,5"]));
    assert_eq!(v["result"]["value_log"], "inf");
}

#[test]
fn currents_and_voltage_files() {
    let dir = tempfile::tempdir().unwrap();
    let (c, u) = (dir.path().join("cur.csv"), dir.path().join("phi.csv"));
    let f = fixture("four_cycle.csv");
    let out = rcmlab(&[
        "resistance", "--network", &f, "--source", "0,0", "--target", "1,0",
        "--currents", c.to_str().unwrap(), "--voltage", u.to_str().unwrap(),
    ]);
    json_of(&out);
    let cur = std::fs::read_to_string(&c).unwrap();
    assert!(cur.starts_with("x1,y1,x2,y2,current\n"));
    let direct: f64 = cur.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!((direct - 0.75).abs() < 1e-12);
    let phi = rcmlab::fieldlab::io::read_field(&u).unwrap();
    assert_eq!(phi.at((0, 0)).unwrap(), 1.0);
    assert_eq!(phi.at((1, 0)).unwrap(), 0.0);
    assert!((phi.at((0, 1)).unwrap() - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn flat_volume_scaling_slope() {
    let v = json_of(&rcmlab(&[
        "scaling", "--quantity", "volume", "--gammas", "0", "--sizes", "8,16,32", "--replicas", "1", "--seed", "1",
    ]));
    assert!((v["result"][0]["slope"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(v["config"]["seed"], 1);
}

#[test]
fn scaling_ledger_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("ledger.csv");
    let base = ["scaling", "--quantity", "exit_time", "--gammas", "0.5", "--sizes", "2,3,4", "--replicas", "3", "--seed", "5", "--margin", "2", "--deterministic"];
    let mut a: Vec<&str> = base.to_vec();
    a.extend(["--workers", "1", "--ledger", l.to_str().unwrap()]);
    let one = rcmlab(&a);
    let mut b: Vec<&str> = base.to_vec();
    b.extend(["--workers", "2", "--ledger", l.to_str().unwrap()]);
    let two = rcmlab(&b);
    assert_eq!(json_of(&one), json_of(&two));
    let rows = rcmlab::exper::parse_ledger(&std::fs::read_to_string(&l).unwrap()).unwrap();
    assert_eq!(rows.len(), 9);
}

#[test]
fn config_file_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("cfg.json");
    std::fs::write(&c, r#"{"quantity":"volume","gammas":[0],"sizes":[4,8,16],"seed":2,"replicas":5}"#).unwrap();
    let v = json_of(&rcmlab(&["scaling", "--config", c.to_str().unwrap(), "--replicas", "1"]));
    assert_eq!(v["config"]["replicas"], 1);
    assert_eq!(v["config"]["sizes"], serde_json::json!([4, 8, 16]));
    std::fs::write(&c, r#"{"bogus":1}"#).unwrap();
    assert_eq!(rcmlab(&["scaling", "--config", c.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        json_of(&rcmlab(&["sample", "--size", "8", "--kind", "dgff", "--seed", "7", "--out", p.to_str().unwrap()]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read(a.with_extension("json")).unwrap(), std::fs::read(b.with_extension("json")).unwrap());
}

#[test]
fn sample_edge_cases() {
    let v = json_of(&rcmlab(&["sample", "--size", "0", "--seed", "1"]));
    assert_eq!(v["result"]["values"], serde_json::json!([0.0]));
    let v = json_of(&rcmlab(&["sample", "--size", "4", "--kind", "pinned", "--seed", "1", "--margin", "2"]));
    assert_eq!(v["result"]["origin"], 0.0);
}

#[test]
fn identical_invocations_identical_bytes() {
    let args = ["crossing", "--rect", "7x5", "--gamma", "0.7", "--seed", "3", "--margin", "2", "--deterministic"];
    assert_eq!(rcmlab(&args).stdout, rcmlab(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(rcmlab(&["sample", "--size", "3"]).status.code(), Some(2));
    assert_eq!(rcmlab(&["sample", "--nope"]).status.code(), Some(2));
    assert_eq!(rcmlab(&["crossing", "--rect", "1x5"]).status.code(), Some(2));
    assert_eq!(rcmlab(&["walk", "--theta", "2", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn walk_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (t, p) = (dir.path().join("t.csv"), dir.path().join("o.pgm"));
    let v = json_of(&rcmlab(&[
        "walk", "--size", "6", "--gamma", "0.5", "--seed", "4", "--steps", "300", "--boundary", "reflect",
        "--traj", t.to_str().unwrap(), "--pgm", p.to_str().unwrap(),
    ]));
    assert_eq!(v["result"]["steps_taken"], 300);
    let pts = rcmlab::walklab::io::parse_trajectory_csv(&std::fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(pts.len(), 301);
    let (w, h, _) = rcmlab::walklab::io::parse_pgm(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!((w, h), (13, 13));
}

#[test]
fn exittime_flat_unit_box() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("phi.csv");
    let v = json_of(&rcmlab(&["exittime", "--size", "1", "--voltage", u.to_str().unwrap()]));
    assert!((v["result"]["exit_time"].as_f64().unwrap() - 4.5).abs() < 1e-12);
    assert_eq!(rcmlab::fieldlab::io::read_field(&u).unwrap().at((0, 0)).unwrap(), 1.0);
}

#[test]
fn restricted_crossing_flag() {
    let full = json_of(&rcmlab(&["crossing", "--rect", "9x9"]));
    let all = json_of(&rcmlab(&["crossing", "--rect", "9x9", "--restricted", "-4,4"]));
    let a = full["result"]["value"].as_f64().unwrap();
    assert!((a - 8.0 / 9.0).abs() < 1e-12);
    assert!((all["result"]["value"].as_f64().unwrap() - a).abs() < 1e-12);
}

#[test]
fn schemas() {
    for c in ["sample", "resistance", "walk", "heatkernel", "exittime", "scaling", "crossing"] {
        let v = json_of(&rcmlab(&[c, "--schema"]));
        assert_eq!(v["required"], serde_json::json!(["command", "config", "result"]));
        assert!(v["properties"]["result"].is_object());
        assert!(rcmlab(&[c, "--help"]).status.success());
    }
}
