use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn turan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .arg("--quiet")
        .env_remove("TURAN_BUDGET_NODES")
        .output()
        .expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Runs the command, checks the exit code and validates the report.
fn report(args: &[&str], code: i32) -> Value {
    let out = turan(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    let json: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&json).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    assert_eq!(json["passed"], code == 0);
    json
}

#[test]
fn formula_examples() {
    let r = report(&["formula", "t3", "15", "23"], 0);
    assert_eq!(r["outputs"]["value"], 127);
    assert_eq!(r["outputs"]["branch"], "t3/r=n-6");
    let r = report(&["formula", "tpp", "15", "20"], 0);
    assert_eq!(r["outputs"]["value"], 106);
    assert_eq!(r["outputs"]["branch"], "tpp/clique-arm");
    let r = report(&["formula", "t3", "12", "20"], 2);
    assert!(r["error"].as_str().unwrap().contains("requires n ≥ 15"));
    let r = report(&["formula", "t3", "12", "17", "--partial"], 0);
    assert!(r["outputs"]["value"].is_u64());
    assert_eq!(report(&["formula", "path", "4", "7"], 0)["outputs"]["value"], 6);
    assert_eq!(report(&["formula", "star", "3", "8"], 0)["outputs"]["value"], 8);
    report(&["formula", "quux", "15", "20"], 2);
}

#[test]
fn construct_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("out.g6");
    let g6s = g6.to_str().unwrap();
    let r = report(&["construct", "t3", "15", "21", g6s], 0);
    assert_eq!(r["outputs"]["vertices"], 21);
    assert_eq!(r["outputs"]["edges"], 112);
    assert_eq!(r["outputs"]["equals_formula"], true);
    let r = report(&["check", g6s, "t3:15", "--expect", "free"], 0);
    assert_eq!(r["outputs"]["contains"], false);
    report(&["check", g6s, "t3:15", "--expect", "contains"], 1);

    let r = report(&["construct", "tpp", "30", "42", g6s], 0);
    assert_eq!(r["outputs"]["edges"], 525);

    let r = report(&["construct", "t3", "26", "43", g6s, "--connected"], 0);
    assert_eq!(r["outputs"]["edges"], 453);
    assert_eq!(r["outputs"]["base"], "Order2n9Even");

    let edges = dir.path().join("out.txt");
    let r = report(&["construct", "tppp", "15", "40", edges.to_str().unwrap(), "--format", "edge-list"], 0);
    assert_eq!(r["outputs"]["tree_free"], true);
    report(&["check", edges.to_str().unwrap(), "tppp:15", "--expect", "free"], 0);

    report(&["construct", "t3", "12", "20", g6s], 2);
    report(&["construct", "t3", "15", "21", "/nonexistent-dir/x.g6"], 1);
}

#[test]
fn check_complete_graphs() {
    let dir = tempfile::tempdir().unwrap();
    for (m, contains) in [(15, true), (14, false)] {
        let path = dir.path().join(format!("k{m}.txt"));
        let mut text = format!("# vertices {m}\n");
        for u in 0..m {
            for v in u + 1..m {
                text += &format!("{u} {v}\n");
            }
        }
        std::fs::write(&path, text).unwrap();
        let r = report(&["check", path.to_str().unwrap(), "t3:15"], 0);
        assert_eq!(r["outputs"]["contains"], contains);
        assert_eq!(r["outputs"]["witness"].is_array(), contains);
        assert_eq!(r["outputs"]["witness_verified"], true);
    }
    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "not a graph\n").unwrap();
    report(&["check", bad.to_str().unwrap(), "t3:15"], 2);
    report(&["check", "/nonexistent.g6", "t3:15"], 2);
}

#[test]
fn explicit_tree_file() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("tree.txt");
    std::fs::write(&tree, "0 1\n1 2\n1 3\n3 4\n").unwrap();
    let host = dir.path().join("c5.txt");
    std::fs::write(&host, "0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let spec = format!("file:{}", tree.display());
    let r = report(&["check", host.to_str().unwrap(), &spec], 0);
    assert_eq!(r["outputs"]["contains"], false);
    let r = report(&["oracle", &spec, "--p", "5..6"], 0);
    assert_eq!(r["outputs"]["runs"].as_array().unwrap().len(), 2);
}

#[test]
fn table_examples() {
    let r = report(&["table", "t3", "15", "15", "43"], 0);
    let rows = r["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 29);
    assert_eq!(rows.iter().find(|row| row["p"] == 23).unwrap()["value"], 127);
    let r = report(&["table", "tpp", "15", "15", "29"], 0);
    assert_eq!(r["outputs"]["rows"].as_array().unwrap().last().unwrap()["value"], 182);
    let r = report(&["table", "t3", "15", "15", "15"], 0);
    let only = &r["outputs"]["rows"][0];
    assert_eq!((only["r"].as_u64(), only["value"].as_u64()), (Some(1), Some(91)));

    let csv = turan(&["table", "t3", "15", "15", "16", "--csv"]);
    assert!(csv.status.success());
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "p,k,r,value,branch\n15,1,1,91,t3/special-residue\n16,1,2,92,t3/special-residue\n");
}

#[test]
fn oracle_runs() {
    let r = report(&["oracle", "path:4", "--p", "7..8"], 0);
    let values: Vec<u64> = r["outputs"]["runs"].as_array().unwrap().iter().map(|x| x["value"].as_u64().unwrap()).collect();
    assert_eq!(values, [6, 7]);
    let r = report(&["oracle", "star:3", "--p", "8", "--threads", "4"], 0);
    assert_eq!(r["outputs"]["runs"][0]["value"], 8);
    report(&["oracle", "path:9", "--p", "4"], 2);

    let out = Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(["oracle", "path:7", "--p", "9", "--quiet"])
        .env("TURAN_BUDGET_NODES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["outputs"]["runs"][0]["exact"], false);
    assert_eq!(json["outputs"]["budget_nodes"], 10);
}

#[test]
fn verify_examples() {
    let r = report(&["verify", "--n", "15..20", "--p", "n..4n"], 0);
    assert!(r["outputs"]["points"].as_u64().unwrap() > 500);
    let r = report(&["verify", "--n", "26..27", "--p", "2n-9"], 0);
    let counts = r["outputs"]["counts"].as_array().unwrap();
    assert!(counts.iter().any(|c| c["check"] == "connected-construction" && c["passed"] == 2));
    let r = report(&["verify", "--oracle", "--p", "4..8"], 0);
    assert!(!r["outputs"]["oracle"].as_array().unwrap().is_empty());
    report(&["verify"], 2);
    report(&["verify", "--n", "15..16", "--families", "t4"], 2);
}

#[test]
fn verify_is_thread_independent() {
    let run = |threads: &str| {
        let mut r = report(&["verify", "--n", "15..20", "--p", "n..4n", "--oracle", "--threads", threads], 0);
        let outputs = r["outputs"].take();
        let oracle_values: Vec<(Value, Value, Value)> = outputs["oracle"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|c| c["rows"].as_array().unwrap().iter().map(|row| (c["tree"].clone(), row["p"].clone(), row["oracle"].clone())))
            .collect();
        (outputs["values"].clone(), outputs["counts"].clone(), outputs["failures"].clone(), oracle_values)
    };
    assert_eq!(run("1"), run("8"));
}
