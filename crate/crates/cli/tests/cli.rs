use std::path::Path;
use std::process::Command;

use hardcol::graph::{enumerate_path_copies, Graph};
use hardcol::resampler::manual_params;

fn hardcol(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hardcol"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_graph(p: &Path) -> Graph {
    Graph::read_text(std::fs::read_to_string(p).unwrap().as_bytes()).unwrap()
}

#[test]
fn generate_cycle() {
    let (code, out, _) = hardcol(&["generate", "--kind", "cycle", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "p 5 5\ne 0 1\ne 0 4\ne 1 2\ne 2 3\ne 3 4\n");
}

#[test]
fn generate_regular_and_triangle_free() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("reg.txt");
    let args = [
        "generate",
        "--kind",
        "random-regular",
        "--n",
        "10",
        "--degree",
        "3",
        "--seed",
        "7",
    ];
    let (code, _, _) = hardcol(&[&args[..], &["--out", path_str(&reg)]].concat());
    assert_eq!(code, 0);
    let g = read_graph(&reg);
    assert!((0..10).all(|u| g.degree(u) == 3));

    let tf = dir.path().join("tf.txt");
    let (code, _, err) = hardcol(&[
        "generate",
        "--kind",
        "binomial",
        "--n",
        "50",
        "--p",
        "0.1",
        "--triangle-free",
        "--fan-k",
        "3",
        "--out",
        path_str(&tf),
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(report["max_fans"], 0);
    let g = read_graph(&tf);
    for u in 0..g.n() {
        let nb = g.neighbourhood_subgraph(u);
        assert!(enumerate_path_copies(&nb.graph, 3).unwrap().is_empty());
    }
    let (code, _, _) = hardcol(&[
        "generate",
        "--kind",
        "random-regular",
        "--n",
        "5",
        "--degree",
        "3",
    ]);
    assert_eq!(code, 4);
}

#[test]
fn colour_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c5.txt");
    std::fs::write(&g, Graph::cycle(5).to_text()).unwrap();
    let col = dir.path().join("col.json");
    let (code, _, _) = hardcol(&[
        "colour",
        "--graph",
        path_str(&g),
        "--q",
        "3",
        "--lambda",
        "1",
        "--ell",
        "1",
        "--seed",
        "1",
        "--out",
        path_str(&col),
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = hardcol(&[
        "verify",
        "--graph",
        path_str(&g),
        "--q",
        "3",
        "--colouring",
        path_str(&col),
    ]);
    assert_eq!((code, out.as_str()), (0, "valid\n"));

    std::fs::write(&col, r#"{"0":1,"1":1,"2":2,"3":1,"4":2}"#).unwrap();
    let (code, out, _) = hardcol(&[
        "verify",
        "--graph",
        path_str(&g),
        "--q",
        "3",
        "--colouring",
        path_str(&col),
    ]);
    assert_eq!(code, 3);
    assert!(out.contains("edge 0-1"));
    std::fs::write(&col, r#"{"0":1,"1":2,"2":1,"3":2,"4":7}"#).unwrap();
    let (code, out, _) = hardcol(&[
        "verify",
        "--graph",
        path_str(&g),
        "--q",
        "3",
        "--colouring",
        path_str(&col),
    ]);
    assert_eq!(code, 3);
    assert!(out.contains("vertex 4"));
}

#[test]
fn edgeless_graph_single_colour() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("e.txt");
    std::fs::write(&g, Graph::empty(4).to_text()).unwrap();
    let (code, out, _) = hardcol(&[
        "colour",
        "--graph",
        path_str(&g),
        "--q",
        "1",
        "--lambda",
        "1",
        "--ell",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"0\":1,\"1\":1,\"2\":1,\"3\":1}\n");
}

#[test]
fn budget_exhaustion_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c5.txt");
    std::fs::write(&g, Graph::cycle(5).to_text()).unwrap();
    let report = dir.path().join("r.json");
    let (code, out, _) = hardcol(&[
        "colour",
        "--graph",
        path_str(&g),
        "--q",
        "2",
        "--lambda",
        "1",
        "--ell",
        "3",
        "--budget",
        "20",
        "--max-attempts",
        "2",
        "--report",
        path_str(&report),
    ]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["outcome"], "phase1_budget_exceeded");
    assert_eq!(r["steps"], 40);
}

#[test]
fn bad_inputs_exit_four() {
    let (code, _, err) = hardcol(&["colour", "--graph", "/nonexistent", "--q", "3"]);
    assert_eq!(code, 4);
    assert!(err.contains("nonexistent"));
    let (code, _, _) = hardcol(&[
        "params", "--delta", "100", "--k", "2", "--t", "1", "--eps", "1",
    ]);
    assert_eq!(code, 4);
}

#[test]
fn params_report_contents() {
    let (code, out, _) = hardcol(&[
        "params", "--delta", "1000000", "--k", "3", "--t", "0.5", "--eps", "1",
    ]);
    assert_eq!(code, 0);
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["a"], 1.0);
    let names: Vec<&str> = r["hypotheses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["name"].as_str().unwrap())
        .collect();
    for n in [
        "ell_above_7_log_delta",
        "t_at_most_ell_over_40",
        "ell_over_8_forces_large_z",
        "t_within_fan_budget",
        "q_within_target",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    assert!(r["q_margin"].is_f64());
}

#[test]
fn t_equal_to_ell_is_flagged() {
    let p = manual_params(100, 3, 10.0, 1.0, 10.0, 50).unwrap();
    assert!(p.failed_hypotheses().contains(&"t_at_most_ell_over_40"));
}

#[test]
fn occupancy_table_examples() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = dir.path().join("k2.txt");
    std::fs::write(&k2, Graph::complete(2).to_text()).unwrap();
    let (code, out, _) = hardcol(&["occupancy", "--graph", path_str(&k2), "--lambda", "1"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((rows[0]["fraction"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);

    let c5 = dir.path().join("c5.txt");
    std::fs::write(&c5, Graph::cycle(5).to_text()).unwrap();
    let (_, out, _) = hardcol(&["occupancy", "--graph", path_str(&c5), "--lambda", "0.2,1,3"]);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    // Z = 11 and λZ' = 15 at λ = 1
    assert!((rows[1]["fraction"].as_f64().unwrap() - 3.0 / 11.0).abs() < 1e-12);
    for r in rows.as_array().unwrap() {
        assert_eq!(r["bound_holds"], true);
    }
}

#[test]
fn bench_and_explore_run() {
    let (code, out, _) = hardcol(&[
        "bench",
        "--kind",
        "random-regular",
        "--n",
        "40",
        "--degree",
        "4",
        "--triangle-free",
        "--lambda",
        "1",
        "--ell",
        "2",
        "--runs",
        "4",
        "--jobs",
        "2",
    ]);
    assert_eq!(code, 0);
    let s: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(s["verified"], 4);

    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c.txt");
    std::fs::write(&g, Graph::cycle(12).to_text()).unwrap();
    let (code, out, _) = hardcol(&[
        "explore-b",
        "--graph",
        path_str(&g),
        "--q",
        "3",
        "--lambda",
        "1",
        "--ell",
        "2",
        "--runs",
        "5",
    ]);
    assert_eq!(code, 0);
    let s: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(s["b_flaws_addressed"].as_u64().unwrap() > 0);
}
