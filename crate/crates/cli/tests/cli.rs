use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fjqn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fjqn")).args(args).output().expect("run fjqn")
}

fn ok(args: &[&str]) -> String {
    let out = fjqn(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_tandem_has_eleven_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    ok(&["gen", "--family", "tandem", "--index", "10", "--out", path.to_str().unwrap()]);
    let net = json_file(&path);
    assert_eq!(net["num_nodes"], 11);
    assert_eq!(net["arcs"].as_array().unwrap().len(), 10);
}

#[test]
fn metrics_on_saved_tandem() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("t.json");
    let m = dir.path().join("m.json");
    ok(&["gen", "--family", "tandem", "--index", "10", "--out", net.to_str().unwrap()]);
    ok(&["metrics", net.to_str().unwrap(), "--out", m.to_str().unwrap()]);
    let m = json_file(&m);
    assert_eq!(m["degree"], 2);
    assert_eq!(m["min_level"], 1);
    assert_eq!(m["diameter"], 10);
    assert_eq!(m["schema_version"], 1);
}

#[test]
fn gen_then_metrics_matches_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("n.json");
    // triangles in the sierpinski gasket force level 2
    for (family, extra, index, nodes, diam, level) in [
        ("lattice", Some("2"), 5u32, 25u64, 8u64, 1u64),
        ("hexagon", None, 3, 54, 0, 1),
        ("sierpinski", None, 4, 42, 8, 2),
    ] {
        let idx = index.to_string();
        let mut args = vec!["gen", "--family", family, "--index", &idx, "--out", net.to_str().unwrap()];
        if let Some(d) = extra {
            args.extend(["--d", d]);
        }
        ok(&args);
        let m: Value = serde_json::from_str(&ok(&["metrics", net.to_str().unwrap()])).unwrap();
        assert_eq!(m["num_nodes"], nodes, "{family}");
        if diam > 0 {
            assert_eq!(m["diameter"], diam, "{family}");
        }
        assert_eq!(m["min_level"], level, "{family}");
    }
}

#[test]
fn verdict_lattice_not_scalable() {
    let v: Value = serde_json::from_str(&ok(&["verdict", "--family", "lattice", "--d", "2", "--alpha", "2.5"])).unwrap();
    assert_eq!(v["outcome"], "not_scalable");
    assert_eq!(v["schema_version"], 1);
    assert!(!v["reasons"].as_array().unwrap().is_empty());
    assert_eq!(v["thresholds"]["necessary_alpha"], 3.0);
}

#[test]
fn verdict_tandem_scalable_and_binary_tree_not() {
    let v: Value = serde_json::from_str(&ok(&["verdict", "--family", "tandem", "--alpha", "3"])).unwrap();
    assert_eq!(v["outcome"], "scalable");
    let v: Value = serde_json::from_str(&ok(&["verdict", "--family", "binary_tree", "--alpha", "16"])).unwrap();
    assert_eq!(v["outcome"], "not_scalable");
    let v: Value = serde_json::from_str(&ok(&[
        "verdict", "--family", "tandem", "--alpha", "3", "--computed", "--indices", "8,16,32,64",
    ]))
    .unwrap();
    assert_eq!(v["outcome"], "scalable");
    assert_eq!(v["source"], "computed");
}

#[test]
fn simulate_is_deterministic_given_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let summary = dir.path().join("s.json");
    let base = [
        "simulate", "--family", "tandem", "--indices", "4,8,16,32", "--alpha", "2.5", "--m-max", "2000",
        "--replications", "3", "--seed", "11", "--bound-samples", "100",
    ];
    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--out", a.to_str().unwrap(), "--summary", summary.to_str().unwrap()]);
    ok(&args);
    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--out", b.to_str().unwrap()]);
    ok(&args);
    let csv = std::fs::read_to_string(&a).unwrap();
    assert_eq!(csv, std::fs::read_to_string(&b).unwrap());
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "family,index,num_nodes,diameter,alpha,replication,throughput,std_error,seed");
    assert_eq!(lines.count(), 4 * 3);
    let s = json_file(&summary);
    assert_eq!(s["points"].as_array().unwrap().len(), 4);
    assert!(s["points"][0]["upper_bound"]["bound"].as_f64().unwrap() > 0.0);
    assert!(s["trend"]["outcome"].is_string());
}

#[test]
fn simulate_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.json");
    let csv = dir.path().join("out.csv");
    let text = format!(
        r#"{{"schema_version": 1, "family": {{"kind": "lattice", "d": 2}}, "indices": [2, 3],
            "buffer_size": 2, "distribution": {{"kind": "exponential", "rate": 1.0}},
            "simulation": {{"m_max": 1000, "warmup": 200, "replications": 2, "seed": 5}},
            "output": {{"csv": {:?}}}}}"#,
        csv.to_str().unwrap()
    );
    std::fs::write(&cfg, text).unwrap();
    ok(&["simulate", "--config", cfg.to_str().unwrap()]);
    let body = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().count(), 1 + 2 * 2);
    assert!(body.lines().nth(1).unwrap().starts_with("lattice2,2,4,2,,0,"));
}

#[test]
fn lpp_emits_json_lines_ending_at_level_zero() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("t.json");
    ok(&["gen", "--family", "ladder", "--index", "3", "--out", net.to_str().unwrap()]);
    let out = ok(&["lpp", net.to_str().unwrap(), "--m", "4", "--alpha", "2", "--seed", "3"]);
    let rows: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[0]["m"], 4);
    assert_eq!(rows.last().unwrap()["m"], 0);
    assert!(rows.iter().all(|r| r["weight"].as_f64().unwrap() >= 1.0));
}

#[test]
fn animal_and_evt_series() {
    let out = ok(&["animal", "--sizes", "5,10", "--alpha", "3", "--replications", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,mean,stderr");
    assert_eq!(lines.len(), 3);
    let out = ok(&["evt", "--alpha", "2", "--n", "100,1000", "--replications", "50"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,mean,stderr,exact,limit");
    assert!(lines[2].starts_with("1000,"));
}

#[test]
fn dimension_report_json() {
    let v: Value =
        serde_json::from_str(&ok(&["dimension", "--family", "ladder", "--indices", "4,8,16,32"])).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["dim_em"]["dim_em"]["finite"], 1);
    assert_eq!(v["dim_em"]["lambda"], 2);
    assert!(v["relation"]["ordering_holds"].as_bool().unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(fjqn(&["gen"]).status.code(), Some(1));
    assert_eq!(fjqn(&["gen", "--family", "nope", "--index", "3"]).status.code(), Some(1));
    assert_eq!(fjqn(&["verdict", "--family", "tandem", "--alpha", "0.5"]).status.code(), Some(1));
    assert_eq!(fjqn(&["gen", "--family", "binary_tree", "--index", "40"]).status.code(), Some(3));
    assert_eq!(fjqn(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name":"x","buffer_size":1,"num_nodes":2,"arcs":[[0,1],[1,0]]}"#).unwrap();
    assert_eq!(fjqn(&["metrics", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn failed_run_leaves_no_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.json");
    let status = fjqn(&["gen", "--family", "binary_tree", "--index", "40", "--out", out.to_str().unwrap()]).status;
    assert!(!status.success());
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}
