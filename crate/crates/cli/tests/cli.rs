use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arclab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn basis_lists_three_matchings() {
    let v = json(&["basis", "--n", "3", "--k", "1", "--l", "2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["count"], 3);
    assert_eq!(v["matchings"].as_array().unwrap().len(), 3);
}

#[test]
fn center_rank_ten() {
    let v = json(&["center", "--n", "5", "--k", "0", "--l", "1"]);
    assert_eq!(v["rank"], 10);
    assert_eq!(v["graded_rank"], serde_json::json!({"0": 1, "2": 4, "4": 5}));
}

#[test]
fn verify_all_passes() {
    let v = json(&["verify", "--suite", "all", "--max-points", "8", "--seed", "7"]);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["suites"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "composition",
        "--max-points",
        "8",
        "--seed",
        "3",
        "--samples",
        "5",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn unknown_suite_is_an_input_error() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn size_guard() {
    assert_eq!(run(&["basis", "--n", "16"]).status.code(), Some(2));
    assert_eq!(run(&["basis", "--n", "16", "--dry-run"]).status.code(), Some(2));
    let v = json(&["basis", "--n", "16", "--dry-run", "--force"]);
    assert_eq!(v["dry_run"], true);
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["basis", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["basis"]).status.code(), Some(2));
    assert_eq!(
        run(&["multiply", "--n", "2", "--x", "9", "--y", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "tangle-homology",
            "--file",
            "/nonexistent",
            "--left",
            "0,0",
            "--right",
            "0,0"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn every_subcommand_has_dry_run() {
    let unknot = data("unknot.json");
    let cap = data("cap.json");
    let cup = data("cup.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["basis", "--n", "4"],
        vec!["multiply", "--n", "2", "--x", "0", "--y", "1"],
        vec!["ring-dump", "--n", "2"],
        vec!["bimodule", "--file", &cap, "--left", "0,0", "--right", "0,0"],
        vec!["tensor-check", "--first", &cup, "--second", &cap],
        vec!["tangle-homology", "--file", &unknot, "--left", "0,0", "--right", "0,0"],
        vec!["invariance"],
        vec!["center", "--n", "4"],
        vec!["springer", "--n", "4", "--m", "0"],
        vec!["center-vs-springer", "--n", "4", "--m", "0"],
        vec!["cell-count", "--n", "4", "--m", "0"],
        vec!["weights", "--N", "3", "--s", "1", "--k", "1"],
        vec!["bijection", "--N", "3", "--s", "1", "--k", "1"],
        vec!["kgroup", "--N", "3", "--s", "1", "--k", "1"],
        vec!["verify", "--suite", "series"],
    ];
    for mut c in cases {
        c.push("--dry-run");
        let v = json(&c);
        assert_eq!(v["dry_run"], true, "{c:?}");
    }
}

#[test]
fn trefoil_homology_and_invariance() {
    let v = json(&[
        "tangle-homology",
        "--file",
        &data("trefoil.json"),
        "--left",
        "0,0",
        "--right",
        "0,0",
    ]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(v["total_rank"], 4);
    assert!(rows.iter().any(|r| r["torsion"] == serde_json::json!([2])));
    let v = json(&[
        "invariance",
        "--first",
        &data("trefoil.json"),
        "--second",
        &data("trefoil_curl.json"),
    ]);
    assert_eq!(v["passed"], true);
}

#[test]
fn unknot_homology_rows() {
    let v = json(&[
        "tangle-homology",
        "--file",
        &data("unknot.json"),
        "--left",
        "0,0",
        "--right",
        "0,0",
    ]);
    let got: Vec<(i64, i64, i64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["hdeg"].as_i64().unwrap(),
                r["qdeg"].as_i64().unwrap(),
                r["rank"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(got, vec![(0, -1, 1), (0, 1, 1)]);
}

#[test]
fn bimodule_and_tensor() {
    let v = json(&[
        "bimodule",
        "--file",
        &data("cap.json"),
        "--left",
        "1,1",
        "--right",
        "1,1",
    ]);
    assert!(v["projective_summands"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["holds"] == true));
    let v = json(&[
        "tensor-check",
        "--first",
        &data("cup.json"),
        "--second",
        &data("cap.json"),
        "--platforms",
        "1,1",
    ]);
    assert_eq!(v["report"]["isomorphism"], true);
}

#[test]
fn center_against_springer_and_cells() {
    let v = json(&["center-vs-springer", "--n", "6", "--m", "2"]);
    assert_eq!(v["passed"], true);
    let v = json(&["cell-count", "--n", "6", "--m", "0"]);
    assert_eq!(v["cells"], "20");
    let v = json(&["springer", "--n", "5", "--m", "1"]);
    assert_eq!(v["rank"], 10);
}

#[test]
fn level_two_commands() {
    let v = json(&["weights", "--N", "2", "--s", "1", "--k", "0"]);
    let mus: Vec<Value> = v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["mu"].clone())
        .collect();
    assert_eq!(
        mus,
        vec![
            serde_json::json!([2, 0]),
            serde_json::json!([1, 1]),
            serde_json::json!([0, 2])
        ]
    );
    let v = json(&["bijection", "--N", "5", "--s", "2", "--k", "1", "--mu", "2,1,1,1,0"]);
    assert_eq!(v["weights"][0]["pairs"].as_array().unwrap().len(), 2);
    let v = json(&["kgroup", "--N", "3", "--s", "1", "--k", "1", "--verify"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["rank"], 8);
    assert_eq!(
        run(&["bijection", "--N", "3", "--s", "0", "--k", "2", "--mu", "0,2,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ring_dump_and_multiply() {
    let v = json(&["ring-dump", "--n", "2", "--products"]);
    assert_eq!(v["dim"], 2);
    // 1 · X = X in H^1
    let v = json(&["multiply", "--n", "2", "--x", "0", "--y", "1"]);
    assert_eq!(v["product"][0]["index"], 1);
    assert_eq!(v["product"][0]["degree"], 2);
}

#[test]
fn text_format_and_threads() {
    let out = Command::new(env!("CARGO_BIN_EXE_arclab"))
        .args(["cell-count", "--n", "4", "--m", "0", "--format", "text"])
        .env("ARCLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("cells: 6"));
    let out = Command::new(env!("CARGO_BIN_EXE_arclab"))
        .args(["cell-count", "--n", "4", "--m", "0"])
        .env("ARCLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
