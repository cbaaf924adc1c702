use std::process::{Command, Output};

use serde_json::Value;

fn circm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circm"))
        .args(args)
        .env_remove("CIRCM_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

#[test]
fn analyze_cubic_is_cm() {
    let out = circm(&["analyze", "--n", "6", "--set", "2,3", "--checks", "cm"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["cm"], true);
    assert_eq!(v["graph"], "C_6(2,3)");
    assert!(v["pdim"].is_null(), "unrequested checks stay null");
}

#[test]
fn analyze_seven_cycle() {
    let v = json(&circm(&["analyze", "--n", "7", "--set", "1", "--checks", "cm,bb"]));
    assert_eq!(v["cm"], false);
    assert_eq!(v["buchsbaum"], true);
    assert_eq!(v["cm_witness"]["face"], serde_json::json!([]));
    assert_eq!(v["cm_witness"]["degree"], 1);
}

#[test]
fn analyze_warns_on_negative_h() {
    let out = circm(&["analyze", "--n", "11", "--set", "1,2", "--checks", "betti"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["h_vector"], serde_json::json!([1, 8, 14, -1]));
    assert_eq!(v["h_nonnegative"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative entry"));
}

#[test]
fn table_output_on_request() {
    let out = circm(&["analyze", "--n", "5", "--set", "1", "--checks", "cm", "--table"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("cohen-macaulay true"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(circm(&["analyze", "--n", "6", "--set", "4"]).status.code(), Some(2));
    assert_eq!(
        circm(&["analyze", "--n", "6", "--set", "1", "--field", "gf:4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        circm(&["analyze", "--n", "6", "--set", "1", "--checks", "xx"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        circm(&["analyze", "--n", "6", "--set", "1", "--budget", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(circm(&["verify", "--theorem", "nope"]).status.code(), Some(2));
    assert_eq!(
        circm(&["analyze", "--n", "17", "--set", "1", "--checks", "pdim"])
            .status
            .code(),
        Some(3)
    );
    let allowed = circm(&[
        "analyze",
        "--n",
        "17",
        "--set",
        "1,2,3",
        "--checks",
        "pdim",
        "--allow-large",
    ]);
    assert_eq!(allowed.status.code(), Some(0));
}

#[test]
fn verify_small_scopes_pass() {
    let out = circm(&["verify", "--theorem", "main", "--d-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let t = &v["theorems"][0];
    assert_eq!(t["theorem_id"], "main");
    assert!(t["cases_run"].as_u64().unwrap() > 10);
    assert_eq!(t["failures"], serde_json::json!([]));

    let out = circm(&["verify", "--theorem", "cubic", "--max-2n", "12"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_lemma_h2_prints_evidence() {
    let out = circm(&["verify", "--theorem", "lemma-h2", "--d", "3", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("H~2 = 5, formula = 5"), "{text}");
}

#[test]
fn sweep_contiguous_matches_closed_form() {
    let out = circm(&[
        "sweep",
        "--d-range",
        "1..3",
        "--n-range",
        "2d..3d+4",
        "--checks",
        "cm,bb",
    ]);
    assert!(out.status.success());
    let rows = lines(&out);
    assert_eq!(rows.len(), 6 + 7 + 8);
    let keys: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| (r["d"].as_u64().unwrap(), r["n"].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for r in &rows {
        assert_eq!(r["cm_matches"], true, "{r}");
        assert_eq!(r["well_covered_matches"], true, "{r}");
    }
}

#[test]
fn sweep_is_deterministic_across_job_counts() {
    let args = ["sweep", "--d-range", "1..2", "--n-range", "2d..4d+6", "--checks", "all"];
    let one = circm(&[&args[..], &["--jobs", "1"]].concat());
    let four = circm(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_circm"))
        .args(args)
        .env("CIRCM_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
}

#[test]
fn sweep_errors_stay_on_their_line() {
    let rows = lines(&circm(&[
        "sweep",
        "--d-range",
        "2..2",
        "--n-range",
        "3..6",
        "--checks",
        "cm",
    ]));
    assert_eq!(rows.len(), 4);
    assert!(rows[0]["error"].is_string());
    assert_eq!(rows[1]["report"]["cm"], true);
    assert_eq!(rows[3]["report"]["cm"], false);
}

#[test]
fn sweep_empty_range() {
    let out = circm(&["sweep", "--d-range", "3..1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn sweep_cubic_finds_five_classes() {
    let rows = lines(&circm(&["sweep", "--family", "cubic", "--max-2n", "10"]));
    let mut classes: Vec<String> = rows
        .iter()
        .filter(|r| r["connected"] == true && r["well_covered"] == true)
        .map(|r| r["isomorphic_to"].as_str().unwrap().to_string())
        .collect();
    classes.sort();
    classes.dedup();
    assert_eq!(classes, ["C_10(2,5)", "C_4(1,2)", "C_6(1,3)", "C_6(2,3)", "C_8(1,4)"]);
    for r in &rows {
        assert_eq!(r["cm"], r["cm_expected"], "{r}");
    }
}

#[test]
fn lexprod_reports_isomorphic_circulant() {
    let v = json(&circm(&["lexprod", "C_5(1)", "C_2(1)", "--checks", "cm"]));
    assert_eq!(v["vertex_count"], 10);
    let iso: Vec<&str> = v["isomorphic_circulants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert!(iso.contains(&"C_10(1,4,5)"), "{iso:?}");
    assert_eq!(v["report"]["cm"], true);
}

#[test]
fn export_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("g.edges");
    let facets = dir.path().join("g.facets");
    let e = edges.to_str().unwrap();
    let f = facets.to_str().unwrap();

    assert!(
        circm(&["export", "--n", "8", "--set", "1,4", "--format", "edges-v1", "-o", e])
            .status
            .success()
    );
    let text = std::fs::read_to_string(&edges).unwrap();
    assert!(text.starts_with("n 8\n1 2\n1 5\n1 8\n"), "{text}");

    assert!(circm(&["export", "--edges-file", e, "--format", "facets-v1", "-o", f])
        .status
        .success());
    let from_edges = json(&circm(&["analyze", "--edges-file", e, "--checks", "cm,pdim"]));
    let from_facets = json(&circm(&["analyze", "--facets-file", f, "--checks", "cm,pdim"]));
    for key in ["f_vector", "h_vector", "cm", "pdim", "depth"] {
        assert_eq!(from_edges[key], from_facets[key], "{key}");
    }
    assert_eq!(from_edges["depth"], 2);

    let out = circm(&["export", "--facets-file", f, "--format", "edges-v1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_boundary_matrix() {
    let out = circm(&["export", "--n", "4", "--set", "1", "--format", "smat-v1", "--dim", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("4 2"));
    assert_eq!(rows.count(), 4);
    let out = circm(&["export", "--n", "4", "--set", "1", "--format", "smat-v1", "--dim", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_facet_file_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.facets");
    std::fs::write(&path, "n 3\n1 2\n1\n").unwrap();
    let out = circm(&["analyze", "--facets-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
