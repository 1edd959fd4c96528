use std::process::{Command, Output};

use hasm_core::renewal::ReductionTrace;
use hasm_core::WeightedGraph;

fn hasm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hasm")).args(args).env_remove("HASM_MAX_N").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = hasm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "gn", "--n", "1"]), "3/2\n");
    assert_eq!(stdout(&["count", "teeth", "--n", "2"]), "16\n");
    assert_eq!(stdout(&["count", "aztec-rect", "--m", "1", "--k", "1", "--keep", "1"]), "2\n");
    assert_eq!(stdout(&["count", "gn", "--n", "2", "--engine", "both"]), "45/16\n");
    assert_eq!(stdout(&["count", "fortress", "--n", "2", "--bottom", "n+1,n-1", "--engine", "pfaffian"]), "5\n");
    assert_eq!(stdout(&["count", "fortress", "--n", "2", "--bottom", "n-1,n-1", "--engine", "both"]), "20\n");
}

#[test]
fn enumerate_csv_rows() {
    let all = stdout(&["enumerate", "--n", "1"]);
    assert_eq!(all.lines().count(), 3);
    let pinned = stdout(&["enumerate", "--n", "1", "--fix-c", "n+1"]);
    assert_eq!(pinned.lines().count(), 2);
    assert!(pinned.lines().nth(1).unwrap().contains("n+1"));
    let free = stdout(&["enumerate", "--n", "2", "--bottom", "*,n-1"]);
    assert!(free.lines().skip(1).all(|l| l.contains(",\"n+1,n-1\",") || l.contains(",\"n-1,n-1\",")));
}

#[test]
fn enumerate_json_schema() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["enumerate", "--n", "2", "--format", "json"])).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["bottom"], "*,*");
    let asms = v["asms"].as_array().unwrap();
    assert_eq!(v["count"], asms.len());
    assert_eq!(asms.len(), 12);
    let mut total = 0u64;
    for (k, a) in asms.iter().enumerate() {
        assert_eq!(a["index"], k);
        assert_eq!(a["rows"].as_array().unwrap().len(), 2);
        assert_eq!(a["bottom"].as_array().unwrap().len(), 2);
        for key in ["n_minus", "n_minus_even", "n_minus_odd", "n_plus_even", "n_plus_odd"] {
            assert!(a["stats"][key].is_u64(), "{key}");
        }
        total += a["parity_weight"].as_str().unwrap().parse::<u64>().unwrap();
    }
    assert_eq!(total, 45);
}

#[test]
fn reduce_and_replay() {
    assert_eq!(stdout(&["reduce", "--n", "2"]), "15/8\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["reduce", "--n", "3", "--trace", p]), "75/32\n");
    assert!(stdout(&["reduce", "--replay", p]).contains("75/32"));

    let mut trace: ReductionTrace = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    trace.steps[3].factor = hasm_core::exact::rat(7, 1);
    std::fs::write(&path, serde_json::to_string(&trace).unwrap()).unwrap();
    let out = hasm(&["reduce", "--replay", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("step 3"));
}

#[test]
fn verify_passes() {
    let text = stdout(&["verify", "1", "--n", "1..3"]);
    assert!(text.contains("n=3 minus-weighted: asm-sum=512 teeth-brute=512 teeth-pfaffian=512 closed=512 match"));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["verify", "recursion", "--n", "2..3", "--format", "json"])).unwrap();
    assert_eq!(v["ok"], true);
    let ratios: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["label"] == "ratio").collect();
    assert_eq!(ratios.len(), 2);
    assert!(ratios[1]["values"].as_array().unwrap().iter().all(|x| x["value"] == "75/32"));
    assert!(stdout(&["verify", "lemma", "--n", "1..2", "--k", "3"]).contains("all 10 checks hold"));
    stdout(&["verify", "3", "--n", "1..3"]);
}

#[test]
fn guardrail() {
    let out = hasm(&["count", "teeth", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HASM_MAX_N"));
    assert_eq!(stdout(&["count", "teeth", "--n", "5", "--force", "--engine", "pfaffian"]), "33554432\n");
    let raised = Command::new(env!("CARGO_BIN_EXE_hasm"))
        .args(["count", "teeth", "--n", "5", "--engine", "pfaffian"])
        .env("HASM_MAX_N", "5")
        .output()
        .unwrap();
    assert!(raised.status.success());
    let lowered = Command::new(env!("CARGO_BIN_EXE_hasm")).args(["verify", "1"]).env("HASM_MAX_N", "2").output().unwrap();
    assert!(!lowered.status.success());
}

#[test]
fn unknown_flags_show_usage() {
    let out = hasm(&["count", "gn", "--n", "1", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn export_graph_round_trips() {
    let json = stdout(&["export-graph", "gn", "--n", "2"]);
    let g: WeightedGraph = serde_json::from_str(&json).unwrap();
    assert!(g.coordinate_isomorphic(&hasm_core::builders::build_gn(2)));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    stdout(&["export-graph", "teeth", "--n", "2", "--out", path.to_str().unwrap()]);
    let h: WeightedGraph = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(h.vertex_count(), hasm_core::builders::build_teeth_region(2).vertex_count());
}

#[test]
fn output_is_deterministic() {
    for args in [&["enumerate", "--n", "3", "--format", "json"][..], &["verify", "2", "--n", "1..3", "--format", "json"]] {
        assert_eq!(hasm(args).stdout, hasm(args).stdout);
    }
}
