use std::process::{Command, Output};

use serde_json::Value;

fn colour3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colour3"))
        .args(args)
        .env_remove("COLOUR3_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn series_low_orders() {
    let out = colour3(&["series", "--max-order", "2", "--grid-size", "32"]);
    assert!(out.status.success());
    let v = json(&out);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(c[0]["value"], 1.0);
    assert!((c[1]["value"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((c[2]["value"].as_f64().unwrap() - 2.0 * (pi2 - 6.0)).abs() < 1e-6);
    assert_eq!(v["meta"]["grid"]["size"], 32);
}

#[test]
fn series_order_zero_and_csv() {
    let out = colour3(&["series", "--max-order", "0", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("order,value,error"));
    assert!(lines.next().unwrap().starts_with("0,1.00000000000e0,"));
    assert!(lines.next().is_none());
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = colour3(&["series", "--max-order", "1", "--grid-size", "16", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn eval_sources() {
    let v = json(&colour3(&["eval", "--p1", "0", "--p2", "0", "--order", "2"]));
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((v["closed"].as_f64().unwrap() - 2.0 * (pi2 - 6.0)).abs() < 1e-9);
    let v = json(&colour3(&["eval", "--p1", "1", "--p2", "0", "--order", "1", "--source", "both"]));
    assert!(v["discrepancy"].as_f64().unwrap() < 1e-8);
    let v = json(&colour3(&["eval", "--p1", "1", "--p2", "1", "--order", "3"]));
    assert!((v["closed"].as_f64().unwrap() - colour3_core::closedforms::gp6_diag(1.0)).abs() < 1e-11);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(colour3(&["eval", "--order", "4", "--source", "closed"]).status.code(), Some(2));
    assert_eq!(colour3(&["graphs", "--order", "3"]).status.code(), Some(2));
    assert_eq!(colour3(&["series", "--max-order", "5"]).status.code(), Some(2));
    assert_eq!(colour3(&["eval", "--p1", "-2"]).status.code(), Some(2));
    assert_eq!(colour3(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn graph_table() {
    let v = json(&colour3(&["graphs", "--order", "2", "--p1", "1", "--p2", "0"]));
    let s: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["multiplicity"].as_u64().unwrap()).collect();
    assert_eq!(s, vec![2, 4, 4, 4]);
    assert!(v["difference"].as_f64().unwrap() < 1e-9);
    assert!(v["classes"][0]["graph"]["faces"].is_array());

    let v = json(&colour3(&["graphs", "--order", "1", "--p1", "1", "--p2", "0"]));
    assert!((v["total"].as_f64().unwrap() - std::f64::consts::LN_2 / 2.0).abs() < 1e-11);
    let v = json(&colour3(&["graphs", "--order", "1", "--p1", "1", "--p2", "1.000001"]));
    assert!(v["total"].as_f64().unwrap().is_finite());
}

#[test]
fn config_file_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "grid_size = 16\nmax_order = 1\nformat = csv\n").unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["series"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_colour3")).args(&args).env("COLOUR3_CONFIG", &path).output().unwrap()
    };
    let text = String::from_utf8(run(&[]).stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains(",16,"));
    let v: Value = serde_json::from_slice(&run(&["--format", "json", "--grid-size", "20"]).stdout).unwrap();
    assert_eq!(v["meta"]["grid"]["size"], 20);

    std::fs::write(&path, "grid_size = lots\n").unwrap();
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn under_resolved_quadrature_fails_verification() {
    let out = colour3(&["verify", "--points", "2", "--grid-size", "16", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let graphs = &v["criteria"][2];
    assert_eq!(graphs["passed"], false);
    let detail = graphs["items"].to_string();
    assert!(detail.contains("did not converge"), "{detail}");
}
