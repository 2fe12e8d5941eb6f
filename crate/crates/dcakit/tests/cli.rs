use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dcakit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcakit")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn ex1_good_csv_has_decreasing_x() {
    let dir = tempfile::tempdir().unwrap();
    let o = dcakit(dir.path(), &["run", "--problem", "ex1_good", "--x0", "1", "--iters", "200"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("ex1_good.csv")).unwrap();
    let xs: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(xs.len(), 201);
    assert!(xs.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(json_file(&dir.path().join("ex1_good.json"))["status"], "MaxIters");
}

#[test]
fn reproduced_breakdown_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = dcakit(dir.path(), &["run", "--problem", "ex1_bad", "--x0", "1"]);
    assert!(o.status.success());
    let doc = json_file(&dir.path().join("ex1_bad.json"));
    assert_eq!(doc["status"], "Breakdown(EmptySubdifferential)");
    assert_eq!(doc["records"][0]["y"][0].as_f64(), Some(-0.5));
    assert_eq!(doc["records"][1]["x"][0].as_f64(), Some(0.0));
}

#[test]
fn quartic_round_trip_through_diagnose() {
    let dir = tempfile::tempdir().unwrap();
    let o = dcakit(dir.path(), &["run", "--problem", "quartic", "--x0", "0.5", "--iters", "2000", "--out", "q"]);
    assert!(o.status.success());
    let doc = json_file(&dir.path().join("q.json"));
    let x1 = doc["records"][1]["x"][0].as_f64().unwrap();
    assert!((x1 - 0.4240).abs() < 1e-3 && (x1 - 0.42385379906978327).abs() < 1e-15);

    let from_json = dcakit(dir.path(), &["diagnose", "q.json", "--json", "--report", "report.json"]);
    assert!(from_json.status.success(), "{}", stdout(&from_json));
    let report: Value = serde_json::from_str(&stdout(&from_json)).unwrap();
    assert_eq!(report["report"]["passed"], true);
    let theta = report["report"]["fit"]["theta"].as_f64().unwrap();
    assert!((theta - 0.75).abs() < 0.05, "theta {theta}");
    assert_eq!(json_file(&dir.path().join("report.json")), report);

    // the CSV plus its sibling JSON gives the same verdicts
    let from_csv = dcakit(dir.path(), &["diagnose", "q.csv", "--json"]);
    assert!(from_csv.status.success());
    let csv_report: Value = serde_json::from_str(&stdout(&from_csv)).unwrap();
    assert_eq!(csv_report["report"], report["report"]);
}

#[test]
fn oscillation_fails_diagnose() {
    let dir = tempfile::tempdir().unwrap();
    assert!(dcakit(dir.path(), &["run", "--problem", "ex2_oscillate", "--scenario", "adversarial", "--out", "ex2"]).status.success());
    let o = dcakit(dir.path(), &["diagnose", "ex2.json", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = doc["report"]["checks"].as_array().unwrap();
    let outcome = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap()["outcome"].as_str().unwrap().to_string();
    assert_eq!(outcome("monotone_descent"), "pass");
    assert_eq!(outcome("sufficient_descent"), "skipped");
    assert_eq!(outcome("cauchy_tail"), "FAIL");
}

#[test]
fn unreadable_traces_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.csv"), "").unwrap();
    fs::write(dir.path().join("empty.json"), "").unwrap();
    fs::write(dir.path().join("junk.json"), "{\"status\": 3}").unwrap();
    for f in ["empty.csv", "empty.json", "junk.json", "missing.json"] {
        let o = dcakit(dir.path(), &["diagnose", f]);
        assert_eq!(o.status.code(), Some(2), "{f}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
}

#[test]
fn rates_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = dcakit(dir.path(), &["rates", "--form", "next", "--alpha", "1", "--beta", "1", "--generate", "5", "--json"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["verdict"]["kind"], "Linear");
    assert_eq!(doc["verdict"]["q"].as_f64(), Some(0.5));
    let seq: Vec<f64> = doc["sequence"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(seq, vec![1.0, 0.5, 0.25, 0.125, 0.0625]);

    let o = dcakit(dir.path(), &["rates", "--theta", "0.75"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("f: O(k^-2)") && text.contains("x: O(k^-0.5)"), "{text}");

    for bad in [&["rates", "--theta", "1.2"][..], &["rates", "--theta", "-0.1"], &["rates", "--form", "next", "--alpha", "1"], &["rates", "--form", "current", "--alpha", "-1", "--beta", "1"]] {
        assert_eq!(dcakit(dir.path(), bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.cfg"), "# quartic\nproblem = quartic\nx0 = 0.5\niters = 50\nout = cfg_run\n").unwrap();
    let o = dcakit(dir.path(), &["run", "--config", "run.cfg", "--iters", "10"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json_file(&dir.path().join("cfg_run.json"));
    assert_eq!(doc["final_k"], 10);
    assert_eq!(doc["config"]["max_iters"], 10);

    fs::write(dir.path().join("bad.cfg"), "problem = quartic\niters = lots\n").unwrap();
    let o = dcakit(dir.path(), &["run", "--config", "bad.cfg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(dcakit(dir.path(), &["run", "--problem", "nope"]).status.code(), Some(2));
    assert_eq!(dcakit(dir.path(), &["run", "--problem", "quartic", "--selection", "sideways"]).status.code(), Some(2));
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        assert!(dcakit(dir.path(), &["run", "--problem", "ex1_good", "--out", out]).status.success());
    }
    for ext in ["csv", "json"] {
        assert_eq!(fs::read(dir.path().join(format!("a.{ext}"))).unwrap(), fs::read(dir.path().join(format!("b.{ext}"))).unwrap());
    }
}

#[test]
fn inline_problem_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = dcakit(dir.path(), &["run", "--inline", "g = quad(0.5, -3, 4.5); h = zero", "--x0", "0", "--out", "convex"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json_file(&dir.path().join("convex.json"));
    assert_eq!(doc["status"], "FixedPoint");
    assert!((doc["records"][1]["x"][0].as_f64().unwrap() - 3.0).abs() < 1e-9);

    // the ex1_bad decomposition written inline breaks down the same way
    let o = dcakit(dir.path(), &["run", "--inline", "g = quad(0.5); h = negsqrt; box = 0, inf", "--x0", "1", "--out", "bad"]);
    assert!(o.status.success());
    assert_eq!(json_file(&dir.path().join("bad.json"))["status"], "Breakdown(EmptySubdifferential)");
    assert_eq!(dcakit(dir.path(), &["run", "--inline", "g = quad(1); h = zero"]).status.code(), Some(2));
}

#[test]
fn zoo_lists_every_problem() {
    let dir = tempfile::tempdir().unwrap();
    let o = dcakit(dir.path(), &["zoo", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in dcakit_core::zoo::ZOO_NAMES {
        assert!(text.lines().any(|l| l == *name), "{name}");
    }
}
