use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

use doubling_core::{distance_table, doubling_report, Graph, Measure};

fn ldc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldc")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ldc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn counting_on_l5_has_constant_three() {
    let v = json(&["doubling", "--graph", "path:5", "--measure", "counting", "--format", "json"]);
    for key in ["input", "result", "witnesses", "residuals"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(f(&v["result"]["c_mu"]), 3.0);
    assert_eq!(f(&v["result"]["c_mu0"]), 3.0);
    assert_eq!(v["witnesses"]["witness"]["center"], 2);
}

#[test]
fn star_least_constant() {
    let v = json(&["least", "--graph", "star:10", "--format", "json"]);
    assert!((f(&v["result"]["c_estimate"]) - 4.0).abs() < 1e-9);
}

#[test]
fn path_nine_with_certificate() {
    let v = json(&["path", "--n", "9", "--format", "json"]);
    assert!((f(&v["result"]["c"]) - 2.9051661678).abs() < 1e-10);
    assert!(f(&v["residuals"]["poly_residual"]) < 1e-9);
    assert_eq!(v["result"]["k_star"], 1);
}

#[test]
fn fixed_radius_system() {
    let v = json(&["path", "--n", "10", "--k", "1", "--format", "json"]);
    assert!((f(&v["result"]["c"]) - 2.922_999_610_168_972_6).abs() < 1e-9);
    let out = ldc(&["path", "--n", "10", "--k", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectral_on_path_matches_closed_form() {
    let v = json(&["spectral", "--graph", "path:40", "--format", "json"]);
    assert!(f(&v["residuals"]["closed_form_difference"]).abs() < 1e-9);
    assert_eq!(v["witnesses"]["perron"].as_array().unwrap().len(), 40);
}

#[test]
fn window_reports() {
    let v = json(&["window", "--graph", "z", "--width", "50", "--format", "json"]);
    assert_eq!(f(&v["result"]["max_quotient"]), 3.0);
    assert_eq!(v["witnesses"]["witness"]["k"], 0);
    let v = json(&["window", "--graph", "n", "--width", "200", "--alpha", "0.6", "--format", "json"]);
    assert!(f(&v["result"]["max_quotient"]) <= 3.0 + 1e-12);
    assert_eq!(v["result"]["all_quotients_bounded"], true);
}

#[test]
fn sweep_csv() {
    let out = ldc(&["sweep", "--range", "2..12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,c,c0,k_star"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[7][0], "9");
    assert!((rows[7][1].parse::<f64>().unwrap() - 2.9051661678).abs() < 1e-10);
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 7] = [
        &["doubling", "--graph", "@missing.txt"],
        &["doubling", "--graph", "tree:5"],
        &["doubling", "--graph", "path:5", "--measure", "lambda_alpha:0.2"],
        &["least", "--graph", "path:5", "--tol", "-1"],
        &["window", "--graph", "q", "--width", "5"],
        &["sweep", "--range", "9..3"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = ldc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn edge_list_and_measure_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let measure = dir.path().join("mu.txt");
    let mut g = std::fs::File::create(&graph).unwrap();
    writeln!(g, "# a path on four vertices\n4 3\n1 2\n2 3\n3 4").unwrap();
    std::fs::write(&measure, "[1, 2, 2, 1]").unwrap();
    let gs = format!("@{}", graph.display());
    let ms = format!("@{}", measure.display());
    let v = json(&["doubling", "--graph", &gs, "--measure", &ms, "--format", "json"]);
    // B(1, 1) = {1, 2}: 3 / 1 beats 5 / 2 at vertex 2
    assert_eq!(f(&v["result"]["c_mu0"]), 3.0);
    assert_eq!(v["witnesses"]["witness0"], 1);

    std::fs::write(&measure, "1\n2\n").unwrap();
    assert_eq!(ldc(&["doubling", "--graph", &gs, "--measure", &ms]).status.code(), Some(2));
    std::fs::write(&graph, "3 1\n1 2\n").unwrap();
    assert_eq!(ldc(&["doubling", "--graph", &gs]).status.code(), Some(2));
}

#[test]
fn json_round_trips_through_recomputation() {
    for (graph, measure) in [("path:9", "sine"), ("cycle:7", "counting"), ("star:6", "lambda_alpha:0.7")] {
        let v = json(&["doubling", "--graph", graph, "--measure", measure, "--table", "--format", "json"]);
        let n = v["input"]["n"].as_u64().unwrap() as usize;
        let edges: Vec<(usize, usize)> = v["input"]["edges"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e[0].as_u64().unwrap() as usize - 1, e[1].as_u64().unwrap() as usize - 1))
            .collect();
        let weights: Vec<f64> = serde_json::from_value(v["input"]["weights"].clone()).unwrap();
        let g = Graph::from_edges(n, &edges).unwrap();
        let r = doubling_report(&distance_table(&g), &Measure::new(weights).unwrap(), true).unwrap();
        assert_eq!(f(&v["result"]["c_mu"]), r.c_mu, "{graph} {measure}");
        assert_eq!(f(&v["result"]["c_mu0"]), r.c_mu0);
        let table = v["witnesses"]["table"].as_array().unwrap();
        let ratios: Vec<f64> = r.table.unwrap().iter().map(|q| q.ratio).collect();
        assert_eq!(table.iter().map(|q| f(&q["ratio"])).collect::<Vec<_>>(), ratios);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let runs: [&[&str]; 4] = [
        &["least", "--graph", "cycle:8", "--format", "json"],
        &["path", "--n", "20", "--format", "json"],
        &["spectral", "--graph", "star:7", "--format", "csv"],
        &["doubling", "--graph", "complete:5", "--measure", "sine", "--table"],
    ];
    for args in runs {
        let a = ldc(args);
        let b = ldc(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
