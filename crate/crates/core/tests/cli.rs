use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planar-oracle")).args(args).current_dir(cwd).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn generate_build_query_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = cli(&["generate", "--kind", "triangulation", "--points", "120", "--hull", "10", "--seed", "3", "--out", "g.pg"], d);
    assert!(g.status.success());
    let info = json(&g);
    let b = cli(&["build", "--r", "60", "--in", "g.pg", "--out", "orc"], d);
    assert!(b.status.success(), "{}", String::from_utf8_lossy(&b.stderr));
    assert!(json(&b)["regions"].as_u64().unwrap() > 1);
    std::fs::write(d.join("pairs.txt"), "0 5\n7 7\n3 100\n").unwrap();
    let q = cli(&["query", "--oracle", "orc", "--pairs", "pairs.txt", "--verify"], d);
    assert!(q.status.success());
    let r = json(&q);
    assert_eq!(r["queries"], 3);
    assert_eq!(r["results"][1][2], "0");
    let q = cli(&["query", "--oracle", "orc", "--random", "300", "--verify"], d);
    assert!(q.status.success());
    assert_eq!(json(&q)["mismatches"].as_array().unwrap().len(), 0);
    let i = cli(&["inspect", "--graph", "g.pg"], d);
    assert_eq!(json(&i)["infinite_face"], info["hole"]);
}

#[test]
fn buildvd_then_locate_and_trifind() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(cli(&["generate", "--kind", "grid", "--rows", "6", "--cols", "7", "--out", "g.pg"], d).status.success());
    let v = cli(&["buildvd", "--graph", "g.pg", "--out", "vd.json"], d);
    assert!(v.status.success());
    let vd: Value = serde_json::from_str(&std::fs::read_to_string(d.join("vd.json")).unwrap()).unwrap();
    assert_eq!(vd["is_tree"], true);
    let l = cli(&["locate", "--graph", "g.pg", "--diagram", "vd.json", "--vertex", "0", "20"], d);
    assert!(l.status.success());
    let res = json(&l);
    // with zero weights a hole vertex is its own nearest site
    assert_eq!(res["results"][0]["site_vertex"], 0);
    assert_eq!(res["results"][0]["distance"], "0");
    let t = cli(&["trifind", "--graph", "g.pg", "--sites", "0", "6", "12"], d);
    assert!(t.status.success());
    let tf = json(&t);
    assert!(tf["face"].is_u64());
    assert!(tf["probes"]["total"].as_u64().unwrap() > 0);
    let s = cli(&["inspect", "--diagram", "vd.json"], d);
    assert_eq!(json(&s)["leaves"], vd["sites"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let ok = cli(&["verify", "--only", "planar"], d);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["version"], 1);
    let bad = cli(&["verify", "--only", "planar", "--fault", "flip-tiebreak"], d);
    assert_eq!(bad.status.code(), Some(1));
    let missing = cli(&["build", "--r", "10", "--in", "nope.pg", "--out", "o"], d);
    assert_eq!(missing.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&missing.stderr).unwrap();
    assert!(err["error"].is_string());
}
