//! End-to-end runs of the `jbv` binary.

use std::path::Path;
use std::process::{Command, Output};

use jbv::CoefficientSpec;
use serde_json::Value;
use tempfile::TempDir;

fn jbv(args: &[&str]) -> Output {
    jbv_env(args, None)
}

fn jbv_env(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jbv"));
    cmd.args(args).env_remove("JBV_CONFIG");
    if let Some(path) = config {
        cmd.env("JBV_CONFIG", path);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write_spec(dir: &TempDir, name: &str, spec: &CoefficientSpec) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, spec.to_json().unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn bands_free_json_and_csv() {
    let o = jbv(&["bands", "--q", "3", "--a", "1,1,1", "--b", "0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let bands = v["bands"].as_array().unwrap();
    assert_eq!(bands.len(), 3);
    assert!((bands[0][0].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert!((bands[1][1].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["gaps"].as_array().unwrap().iter().all(|g| g["open"] == false));

    let o = jbv(&["bands", "--a", "1,1", "--b", "0,0.5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,index,lo,hi,open"));
    let gap = text.lines().find(|l| l.starts_with("gap,")).unwrap();
    let cols: Vec<&str> = gap.split(',').collect();
    assert!(cols[2].parse::<f64>().unwrap().abs() < 1e-9);
    assert!((cols[3].parse::<f64>().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(cols[4], "true");
}

#[test]
fn bands_from_periodic_file() {
    let dir = TempDir::new().unwrap();
    let path = write_spec(&dir, "comb.json", &CoefficientSpec::Periodic { a: vec![1.0; 2], b: vec![0.0, 1.0] });
    let out = dir.path().join("bands.json");
    let o = jbv(&["bands", "--periodic", &path, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!((v["gaps"][0]["hi"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bands", "--a", "1,1", "--b", "0"][..],
        &["bands", "--a", "1,-1", "--b", "0,0"],
        &["density", "--spec", "/nonexistent/spec.json", "--q", "1", "--N", "1", "--grid=-1:1:3"],
        &["intersect", "--q", "2"],
        &["construct", "thm16", "--lambda", "0.5", "--gamma", "-1", "--out", "/dev/null"],
        &["frobnicate"],
    ] {
        let o = jbv(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(jbv(&["--help"]).status.code(), Some(0));
}

#[test]
fn density_matches_free_formula() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "free.json", &CoefficientSpec::free());
    let o = jbv(&["density", "--spec", &spec, "--q", "1", "--N", "3", "--grid=-1.99:1.99:200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (x, f): (f64, f64) = (cols[0].parse().unwrap(), cols[1].parse().unwrap());
        assert_eq!((cols[2], cols[3], cols[4]), ("3", "1", "ok"));
        assert!((f - (4.0 - x * x).sqrt() / std::f64::consts::TAU).abs() <= 1e-6, "{line}");
        rows += 1;
    }
    assert_eq!(rows, 200);
}

#[test]
fn density_outside_spectrum_fails_numerically() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "free.json", &CoefficientSpec::free());
    let o = jbv(&["density", "--spec", &spec, "--q", "1", "--N", "0", "--grid", "2.5:3:4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().skip(1).all(|l| l.contains("outside")));
    // a partly covered grid still succeeds
    let o = jbv(&["density", "--spec", &spec, "--q", "1", "--N", "0", "--grid", "1:3:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["status"], "ok");
    assert!(v[2]["density"].is_null());
}

#[test]
fn construct_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("stair.json");
    let o = jbv(&["construct", "thm15", "--q", "2", "--lambda", "0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let meta = json(&o);
    assert_eq!(meta["breakpoints"][0], 0);
    assert_eq!(meta["truncated"], false);
    let spec = CoefficientSpec::load(&out).unwrap();
    let schedule: jbv::Schedule =
        serde_json::from_str(&std::fs::read_to_string(meta["schedule"].as_str().unwrap()).unwrap()).unwrap();
    assert!(schedule.check_invariants().is_ok());
    let horizon = meta["horizon"].as_u64().unwrap() as usize;
    for n in [1, 2, horizon / 2, horizon] {
        assert_eq!(jbv::eval_coefficients(&spec, n).unwrap(), (1.0, schedule.b(n).unwrap()));
    }

    let out16 = dir.path().join("cos.json");
    let o = jbv(&["construct", "thm16", "--lambda", "0.5", "--gamma", "0.4", "--out", out16.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(CoefficientSpec::load(&out16).unwrap(), CoefficientSpec::CosinePower { lambda: 0.5, gamma: 0.4 });

    // without --out everything goes to stdout
    let o = jbv(&["construct", "thm15", "--q", "2", "--lambda", "0.5", "--levels", "3", "--cap", "1000000", "--mode", "empirical"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["meta"]["breakpoints"][0], 0);
    assert!(v["meta"]["schedule"].is_null());
    let spec: CoefficientSpec = serde_json::from_value(v["spec"].clone()).unwrap();
    let CoefficientSpec::Theorem15Schedule(s) = spec else { panic!("wrong kind") };
    assert_eq!(s.levels.len(), 3);
    assert!(s.check_invariants().is_ok());
    assert_eq!(jbv(&["construct", "thm15", "--q", "2", "--lambda", "2.5"]).status.code(), Some(2));
}

#[test]
fn diagnose_staircase_gap_center() {
    let o = jbv(&["construct", "thm15", "--q", "2", "--lambda", "0.5"]);
    let v = json(&o);
    let dir = TempDir::new().unwrap();
    let spec: CoefficientSpec = serde_json::from_value(v["spec"].clone()).unwrap();
    let path = write_spec(&dir, "stair.json", &spec);
    let end_of_level_1 = v["meta"]["breakpoints"][1].as_u64().unwrap().to_string();
    let o = jbv(&["diagnose", "--spec", &path, "--x", "0.25", "--N", &end_of_level_1]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["traces"][0]["running_max"].as_f64().unwrap() >= 1.0);
}

#[test]
fn diagnose_and_verify() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "cos.json", &CoefficientSpec::CosinePower { lambda: 0.5, gamma: 0.4 });
    let o = jbv(&["diagnose", "--spec", &spec, "--x", "0", "--x", "6", "--N", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let v = json(&o);
    let traces = v["traces"].as_array().unwrap();
    assert_eq!(traces.len(), 2);
    // off the spectrum the log statistic grows linearly
    assert!(traces[1]["log_final"].as_f64().unwrap() > 100.0);
    assert!(traces[0]["log_final"].as_f64().unwrap() < 5.0);
    let prefix = traces[0]["statistic"].as_array().unwrap();
    assert_eq!(prefix.last().unwrap()["n"], 1000);
    assert!(traces[0]["running_max"].as_f64().unwrap() >= prefix.last().unwrap()["statistic"].as_f64().unwrap());

    let o = jbv(&["verify", "--spec", &spec, "--q", "1", "--N", "5", "--x", "0.3", "--x=-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("check,x,index,value,tolerance,status\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass")));
    assert!(text.contains("wronskian,"));

    // gap growth on the q = 2 comb, whose gap is (0, 1)
    let comb = write_spec(&dir, "comb.json", &CoefficientSpec::Periodic { a: vec![1.0; 2], b: vec![0.0, 1.0] });
    let o = jbv(&[
        "verify", "--spec", &comb, "--q", "2", "--N", "2", "--x", "1.5", "--verify-gap", "1:60:0.5:0.25",
        "--compare-a", "1,1", "--compare-b", "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("gap_growth,")).count(), 56);
}

#[test]
fn intersect_family() {
    let o = jbv(&["intersect", "--q", "3", "--lambda", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["members"], 101);
    assert_eq!(v["display"], "[-1.5, 1.5]");
    let o = jbv(&["intersect", "--q", "3", "--lambda", "0.5", "--mode", "q-interior"]);
    assert_eq!(json(&o)["display"], "(-0.5, 0.5)");

    let dir = TempDir::new().unwrap();
    let family = dir.path().join("family.json");
    std::fs::write(&family, r#"[{"a": [1, 1], "b": [0, 0]}, {"a": [1, 1], "b": [0.5, 0.5]}]"#).unwrap();
    let o = jbv(&["intersect", "--family", family.to_str().unwrap(), "--sampling", "discrete"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["display"], "[-1.5, 2.0]");
}

#[test]
fn config_file_precedence() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("jbv.toml");
    std::fs::write(&cfg, "points = 11\nset = \"q-interior\"\n").unwrap();
    let v = json(&jbv_env(&["intersect", "--q", "2", "--lambda", "0.5"], Some(&cfg)));
    assert_eq!(v["members"], 11);
    assert_eq!(v["mode"], "q-interior");
    // flags win over the file
    let v = json(&jbv_env(&["intersect", "--q", "2", "--lambda", "0.5", "--points", "21", "--mode", "spectrum"], Some(&cfg)));
    assert_eq!(v["members"], 21);
    assert_eq!(v["mode"], "spectrum");

    std::fs::write(&cfg, "format = \"csv\"\n").unwrap();
    let o = jbv_env(&["bands", "--a", "1", "--b", "0"], Some(&cfg));
    assert!(stdout(&o).starts_with("kind,index,lo,hi,open"));

    std::fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    assert_eq!(jbv_env(&["bands", "--a", "1", "--b", "0"], Some(&cfg)).status.code(), Some(2));
}
