//! End-to-end tests against the compiled binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn opdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("opdyn-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_p5(path: &Path) {
    fs::write(path, "0 1\n1 2\n2 3\n3 4\n").unwrap();
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn field(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} ")))
        .unwrap_or_else(|| panic!("missing field {key} in:\n{report}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn compute_exact_on_p5_matches_known_values() {
    let graph = tmp("p5.txt");
    write_p5(&graph);
    let opinions = tmp("p5-s.txt");
    fs::write(&opinions, "1\n0\n0\n0\n0\n").unwrap();

    let out = opdyn(&[
        "compute",
        "--graph",
        graph.to_str().unwrap(),
        "--opinions",
        opinions.to_str().unwrap(),
        "--method",
        "exact",
    ]);
    assert!(out.status.success(), "{out:?}");
    let report = stdout(&out);
    // z = (34, 13, 5, 2, 1) / 55, so C = ||z||^2 = 1355 / 3025
    let c = field(&report, "controversy");
    assert!((c - 1355.0 / 3025.0).abs() < 1e-12);
    let d = field(&report, "disagreement");
    let idc = field(&report, "dc_index");
    assert!((idc - (d + c)).abs() < 1e-15);
}

#[test]
fn exact_and_approx_agree_through_the_cli() {
    let graph = tmp("agree.txt");
    write_p5(&graph);
    for method in ["exact", "approx"] {
        let out = opdyn(&[
            "compute",
            "--graph",
            graph.to_str().unwrap(),
            "--distribution",
            "power-law",
            "--seed",
            "11",
            "--method",
            method,
            "--format",
            "json",
            "--output",
            tmp(&format!("agree-{method}.json")).to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{out:?}");
    }
    let parse = |m: &str| -> serde_json::Value {
        serde_json::from_str(&fs::read_to_string(tmp(&format!("agree-{m}.json"))).unwrap())
            .unwrap()
    };
    let (ex, ap) = (parse("exact"), parse("approx"));
    for key in [
        "internal_conflict",
        "disagreement",
        "polarization",
        "controversy",
        "dc_index",
    ] {
        let (a, b) = (ex[key].as_f64().unwrap(), ap[key].as_f64().unwrap());
        assert!((a - b).abs() <= 1e-6 * a.abs(), "{key}: {a} vs {b}");
    }
}

#[test]
fn parse_error_exits_2() {
    let graph = tmp("bad.txt");
    fs::write(&graph, "0 1\n2 not-a-node\n").unwrap();
    let out = opdyn(&["compute", "--graph", graph.to_str().unwrap(), "--distribution", "uniform"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn wrong_opinion_length_exits_3() {
    let graph = tmp("len.txt");
    write_p5(&graph);
    let opinions = tmp("len-s.txt");
    fs::write(&opinions, "0.5\n0.5\n").unwrap();
    let out = opdyn(&[
        "compute",
        "--graph",
        graph.to_str().unwrap(),
        "--opinions",
        opinions.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn iteration_budget_exhaustion_exits_4() {
    let graph = tmp("conv.txt");
    write_p5(&graph);
    let out = opdyn(&[
        "compute",
        "--graph",
        graph.to_str().unwrap(),
        "--distribution",
        "uniform",
        "--method",
        "approx",
        "--max-iters",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4), "{out:?}");
}

#[test]
fn dense_guard_refusal_exits_5_and_names_the_guard() {
    let graph = tmp("big-path.txt");
    let mut lines = String::new();
    for i in 0..20_000usize {
        lines.push_str(&format!("{} {}\n", i, i + 1));
    }
    fs::write(&graph, lines).unwrap();
    let out = opdyn(&[
        "compute",
        "--graph",
        graph.to_str().unwrap(),
        "--distribution",
        "uniform",
        "--method",
        "exact",
    ]);
    assert_eq!(out.status.code(), Some(5), "{out:?}");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("20000"), "guard size not named: {stderr}");
}

#[test]
fn lcc_extracts_relabels_and_writes_the_map() {
    let graph = tmp("two-comp.txt");
    // 1-based ids, components {1,2,3} and {7,8}; LCC is the triangle
    fs::write(&graph, "1 2\n2 3\n1 3\n7 8\n").unwrap();
    let edges_out = tmp("lcc-edges.txt");
    let map_out = tmp("lcc-map.txt");
    let out = opdyn(&[
        "lcc",
        "--graph",
        graph.to_str().unwrap(),
        "--output",
        edges_out.to_str().unwrap(),
        "--map",
        map_out.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let edges = fs::read_to_string(&edges_out).unwrap();
    assert_eq!(edges.lines().count(), 3);
    let map = fs::read_to_string(&map_out).unwrap();
    let rows: Vec<Vec<&str>> = map.lines().map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows, vec![vec!["1", "0"], vec!["2", "1"], vec!["3", "2"]]);
}

#[test]
fn gen_opinions_is_deterministic_per_seed() {
    let run = || {
        let out = opdyn(&[
            "gen-opinions",
            "--n",
            "50",
            "--distribution",
            "exponential",
            "--seed",
            "9",
        ]);
        assert!(out.status.success(), "{out:?}");
        stdout(&out)
    };
    let first = run();
    assert_eq!(first, run());
    let values: Vec<f64> = first
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(values.len(), 50);
    assert_eq!(values.iter().cloned().fold(0.0f64, f64::max), 1.0);
}

#[test]
fn bench_jsonl_round_trips_and_is_deterministic() {
    let graph = tmp("bench-graph.txt");
    write_p5(&graph);
    let run = |out_path: &Path| {
        let out = opdyn(&[
            "bench",
            "--graphs",
            graph.to_str().unwrap(),
            "--distributions",
            "uniform,power-law",
            "--seed",
            "4",
            "--output",
            out_path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{out:?}");
        fs::read_to_string(out_path).unwrap()
    };
    let first = run(&tmp("bench-a.jsonl"));
    let second = run(&tmp("bench-b.jsonl"));

    // deterministic up to wall-clock timings
    let strip_timing = |text: &str| -> Vec<serde_json::Value> {
        text.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("wall_time_secs");
                v
            })
            .collect()
    };
    assert_eq!(strip_timing(&first), strip_timing(&second));

    // every emitted row survives a parse / re-serialize cycle bit-exactly
    let mut approx_rows = 0;
    for line in first.lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), line);
        assert_eq!(value["status"], "ok");
        if value["method"] == "approx" {
            approx_rows += 1;
            let errs = value["relative_errors"].as_array().unwrap();
            assert_eq!(errs.len(), 5);
            assert!(errs.iter().all(|e| e.as_f64().unwrap() <= 1e-6));
        }
    }
    assert_eq!(approx_rows, 2);
}

#[test]
fn oracle_subcommand_reports_agreement() {
    let out = opdyn(&["oracle", "--trials", "10", "--max-n", "6", "--seed", "2"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("agree"));
}
