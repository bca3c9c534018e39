use std::fs;
use std::process::{Command, Output};

fn rtgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtgraph"))
        .args(args)
        .env_remove("RTDG_MAX_POINTS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn summary_value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text:?}"))
        .to_string()
}

#[test]
fn build_writes_graph_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = rtgraph(&[
        "build", "--space", "zq:q=2,n=3", "--distances", "1,3", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(summary_value(&stdout(&out), "vertices"), "8");
    assert_eq!(summary_value(&stdout(&out), "edges"), "20");
    assert_eq!(summary_value(&stdout(&out), "degree"), "5");

    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["vertex_count"], 8);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 20);
    assert_eq!(doc["space"], "zq:q=2,n=3");
}

#[test]
fn build_dot_goes_to_stdout_and_summary_to_stderr() {
    let out = rtgraph(&["build", "--space", "sn:n=3", "--distances", "3", "--format", "dot"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 12);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 6);
    assert_eq!(summary_value(&stderr(&out), "edges"), "12");
}

#[test]
fn build_rejects_distances_outside_the_space() {
    let out = rtgraph(&["build", "--space", "sn:n=3", "--distances", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--distances"));
    assert!(stderr(&out).contains("1 not in dist(S_3)"));

    let out = rtgraph(&["build", "--space", "zq:q=1,n=3", "--distances", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--space"));
}

#[test]
fn point_limit_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rtgraph"))
        .args(["build", "--space", "zq:q=2,n=4", "--distances", "1"])
        .env("RTDG_MAX_POINTS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("limit"));

    let out = Command::new(env!("CARGO_BIN_EXE_rtgraph"))
        .args(["build", "--space", "zq:q=2,n=4", "--distances", "1", "--max-points", "16"])
        .env("RTDG_MAX_POINTS", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn formula_prints_expression_and_counts() {
    let out = rtgraph(&["formula", "--space", "zq:q=3,n=4", "--distances", "1,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("3*[3*K_3(1)]^3"));
    assert_eq!(summary_value(&text, "chromatic"), "9");
    assert_eq!(summary_value(&text, "degree"), "20");
    assert_eq!(summary_value(&text, "vertices"), "81");

    let cases = [
        ("sn:n=4", "3", "4*K_3(2)"),
        ("product:sizes=2,3,2", "2", "2*K_3(2)"),
        ("zq:q=2,n=3", "1,3", "[2*K_2(1)]^2"),
    ];
    for (space, d, expected) in cases {
        let out = rtgraph(&["formula", "--space", space, "--distances", d]);
        assert_eq!(stdout(&out).lines().next(), Some(expected));
    }
}

#[test]
fn verify_all_distance_sets_of_small_word_space() {
    let out = rtgraph(&["verify", "--space", "zq:q=2,n=4", "--all-distance-sets"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 15);
    assert!(lines.iter().all(|r| r["claim"] == "structure" && r["status"] == "verified"));
}

#[test]
fn verify_metric_axioms_and_embedding() {
    let out = rtgraph(&["verify", "--space", "sn:n=4", "--claims", "metric-axioms"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"status\":\"verified\""));

    let out = rtgraph(&["verify", "--space", "sn:n=4", "--claims", "embedding", "--distances", "2,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"claim\":\"embedding\""));
}

#[test]
fn verify_output_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str, name: &str| {
        let path = dir.path().join(name);
        let out = rtgraph(&[
            "verify", "--space", "zq:q=3,n=3", "--all-distance-sets", "--claims",
            "structure,degree,connectivity,chromatic,chromatic-by-size,component-uniqueness,recovery,metric-axioms",
            "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).contains("verified, 0 refuted, 0 inconclusive"));
        fs::read(path).unwrap()
    };
    assert_eq!(run("1", "a.jsonl"), run("4", "b.jsonl"));
}

#[test]
fn verify_exits_nonzero_on_inconclusive_reports() {
    let out = rtgraph(&[
        "verify", "--space", "zq:q=2,n=4", "--distances", "1", "--claims", "degree", "--max-points", "8",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"status\":\"inconclusive\""));
}

#[test]
fn verify_rejects_bad_claims_and_oversized_runs() {
    let out = rtgraph(&["verify", "--space", "sn:n=4", "--claims", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--claims"));

    let out = rtgraph(&["verify", "--space", "zq:q=2,n=6", "--all-distance-sets", "--max-sets", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--max-sets"));

    let out = rtgraph(&["verify", "--space", "sn:n=4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chromatic_agrees_with_formula() {
    let cases = [
        ("zq:q=2,n=3", "1,2", "4"),
        ("sn:n=3", "2,3", "6"),
        ("zq:q=3,n=4", "1,3", "9"),
    ];
    for (space, d, chi) in cases {
        let out = rtgraph(&["chromatic", "--space", space, "--distances", d]);
        assert!(out.status.success(), "{space} {d}: {}", stderr(&out));
        let text = stdout(&out);
        assert_eq!(summary_value(&text, "formula"), chi);
        assert_eq!(summary_value(&text, "exact"), chi);
        assert_eq!(summary_value(&text, "agree"), "yes");
    }
}

#[test]
fn chromatic_reports_bounds_when_the_budget_runs_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.json");
    fs::write(&path, r#"{"vertex_count":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#).unwrap();
    let out = rtgraph(&["chromatic", "--input", path.to_str().unwrap(), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("inconclusive"));

    let out = rtgraph(&["chromatic", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(summary_value(&stdout(&out), "exact"), "3");
    assert_eq!(summary_value(&stdout(&out), "agree"), "unknown");
}

#[test]
fn recover_prints_the_distance_set() {
    let out = rtgraph(&["recover", "--family", "zq", "--q", "3", "--degree", "20"]);
    assert_eq!(stdout(&out), "1,3\n");
    let out = rtgraph(&["recover", "--family", "sn", "--degree", "19"]);
    assert_eq!(stdout(&out), "2,4\n");
    let out = rtgraph(&["recover", "--family", "zq", "--q", "2", "--degree", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "\n");
}

#[test]
fn recover_reports_missing_preimages() {
    let out = rtgraph(&["recover", "--family", "zq", "--q", "3", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no preimage\n");
    let out = rtgraph(&["recover", "--family", "sn", "--degree", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--degree"));
}

#[test]
fn build_output_round_trips_through_export() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let copy = dir.path().join("copy.json");
    let g = graph.to_str().unwrap();
    assert!(rtgraph(&["build", "--space", "sn:n=4", "--distances", "2,4", "--out", g]).status.success());
    assert!(rtgraph(&["export", "--input", g, "--out", copy.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(&graph).unwrap(), fs::read(&copy).unwrap());

    let out = rtgraph(&["export", "--input", g, "--format", "expr"]);
    assert_eq!(stdout(&out), "[3*K_2(1)]^4\n");
    let out = rtgraph(&["chromatic", "--input", g]);
    assert!(out.status.success());
    assert_eq!(summary_value(&stdout(&out), "exact"), "8");
}

#[test]
fn export_expression_formats() {
    let dir = tempfile::tempdir().unwrap();
    let expr = dir.path().join("e.json");
    let out = rtgraph(&["export", "--expr", "2 * [ K_2(1) ]^2", "--format", "expr-json", "--out", expr.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&expr).unwrap(), "{\"expr\":\"2*[K_2(1)]^2\"}\n");

    let out = rtgraph(&["export", "--input", expr.to_str().unwrap(), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["vertex_count"], 8);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 12);

    let out = rtgraph(&["export", "--expr", "2*[K_2(1)", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--expr"));
}

#[test]
fn export_builds_from_space_and_distances() {
    let out = rtgraph(&["export", "--space", "product:sizes=2,3,2", "--distances", "2", "--format", "expr"]);
    assert_eq!(stdout(&out), "2*K_3(2)\n");
    let out = rtgraph(&["export", "--space", "product:sizes=2,3,2", "--distances", "2", "--format", "dot"]);
    assert_eq!(stdout(&out).lines().filter(|l| l.contains(" -- ")).count(), 24);
}
