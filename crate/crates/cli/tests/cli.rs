use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_orient-dist"));
    c.env_remove("ODIST_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("orient-dist-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_file(&p);
    p
}

/// Compares against `tests/golden/<name>.json`; `UPDATE_GOLDEN=1` rewrites.
fn golden(name: &str, mut v: Value) {
    if let Some(o) = v.as_object_mut() {
        o.remove("wall_time");
    }
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&v).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(text, want, "golden file {name} differs");
}

#[test]
fn dprime_of_triangle() {
    let v = json(&["dprime", "Bw"]);
    assert_eq!(v["dprime"], 3);
    golden("dprime_triangle", v);
}

#[test]
fn od_of_claw() {
    let v = json(&["od", "Cs", "--min"]);
    assert_eq!(v["od_minus"], 2);
    golden("od_min_claw", v);
    let v = json(&["od", "Cs", "--max"]);
    assert_eq!(v["od_plus"], 3);
    let v = json(&["od", "Cs", "--rigid"]);
    assert!(v["rigid"].is_null());
}

#[test]
fn od_of_c4_both() {
    let v = json(&["od", "C]"]);
    assert_eq!((v["od_minus"].as_u64(), v["od_plus"].as_u64()), (Some(1), Some(2)));
    golden("od_c4", v);
}

#[test]
fn kmn_formula() {
    let v = json(&["kmn", "2", "4"]);
    assert_eq!(v["kind"], "Exact");
    assert_eq!(v["value"], 3);
    assert_eq!(v["r"], 2);
    golden("kmn_2_4", v);
}

#[test]
fn aut_of_c4() {
    let v = json(&["aut", "C]"]);
    assert_eq!(v["order"], 8);
    golden("aut_c4", v);
}

#[test]
fn tree_od_and_orient() {
    golden("tree_od_claw", json(&["tree-od", "Cs"]));
    let v = json(&["orient", "C]", "--method", "hamiltonian"]);
    assert_eq!(v["aut_order"], 1);
    golden("orient_hamiltonian_c4", v);
    let v = json(&["orient", "C]", "--method", "compatible", "--perm", "(0 2 1 3)"]);
    assert_eq!(v["aut_order"], 4);
    let v = json(&["orient", "Cs", "--method", "layered", "--partition", "0;1,2,3"]);
    assert_eq!(v["arcs"], serde_json::json!([[0, 1], [0, 2], [0, 3]]));
    let v = json(&["orient", "E{Sw", "--method", "clawfree"]);
    assert_eq!(v["aut_order"], 1);
}

#[test]
fn verify_inline_corpus() {
    let v = json(&["verify", "--corpus", "Bw,Cs,C],Cs", "--theorem", "thm8"]);
    assert_eq!(v["total"], 4);
    assert_eq!(v["duplicates"], serde_json::json!(["Cs"]));
    golden("verify_thm8_inline", v);
    let v = json(&["verify", "--corpus", "Cr", "--theorem", "cor3"]);
    assert_eq!(v["skipped"][0]["reason"], "class-swapping automorphism");
}

#[test]
fn corpus_from_file() {
    let path = scratch("corpus.g6");
    std::fs::write(&path, "# small trees\nBW\nCF # star\n\nCU\n").unwrap();
    let arg = format!("@{}", path.display());
    let v = json(&["verify", "--corpus", &arg, "--theorem", "cor6"]);
    assert_eq!(v["total"], 3);
    assert_eq!(v["violations"], serde_json::json!([]));
    let v = json(&["verify", "--corpus", path.to_str().unwrap(), "--theorem", "cor6"]);
    assert_eq!(v["total"], 3);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn graph_from_file() {
    let path = scratch("graph.g6");
    std::fs::write(&path, "Bw\n").unwrap();
    let v = json(&["dprime", &format!("@{}", path.display())]);
    assert_eq!(v["dprime"], 3);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn gen_trees() {
    let v = json(&["gen", "--class", "trees", "--min", "6"]);
    assert_eq!(v.as_array().unwrap().len(), 6);
    golden("gen_trees_6", v);
    let out = run(&["gen", "--class", "trees", "--min", "4", "--max", "5", "--output", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
}

#[test]
fn identical_runs_give_identical_json() {
    let a = run(&["od", "E{Sw"]);
    let b = run(&["od", "E{Sw"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_output() {
    let out = run(&["dprime", "Bw", "--output", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("D' = 3"));
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["dprime", "zz"][..],
        &["bogus"],
        &["dprime", "Bw", "--no-such-flag"],
        &["verify", "--corpus", "Bw", "--theorem", "thm99"],
        &["dprime", "Bw", "--edge-cap", "0"],
        &["od", "C?"],
        &["orient", "C]", "--method", "compatible", "--perm", "(0 1 2 3)"],
        &["orient", "C]", "--method", "layered"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(!err.is_empty(), "{args:?}");
    }
    let out = run(&["dprime", "zz"]);
    assert_eq!(String::from_utf8(out.stderr).unwrap().lines().count(), 1);
}

#[test]
fn conjecture_cache_round_trip() {
    let cache = scratch("cache.jsonl");
    let corpus = "C],Cs,Bw,DQw";
    let first = bin()
        .args(["conjecture", "--corpus", corpus, "--which", "both"])
        .env("ODIST_CACHE", &cache)
        .output()
        .unwrap();
    assert!(first.status.success());
    let lines = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(lines.lines().count(), 4);
    for line in lines.lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        for k in ["g6", "dprime", "od_minus", "od_plus", "timestamp"] {
            assert!(r.get(k).is_some(), "{k} missing in {line}");
        }
    }
    // served from the cache: nothing is appended
    let second = run(&["conjecture", "--corpus", corpus, "--cache", cache.to_str().unwrap()]);
    assert!(second.status.success());
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), lines);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_time");
        v
    };
    assert_eq!(strip(&first), strip(&second));

    let audit = json(&["conjecture", "--cache", cache.to_str().unwrap(), "--audit", "10"]);
    assert_eq!(audit["kind"], "audit");
    assert_eq!(audit["passed"], 4);

    // --no-cache leaves the file alone even with the variable set
    let third = bin()
        .args(["conjecture", "--corpus", "E{Sw", "--no-cache"])
        .env("ODIST_CACHE", &cache)
        .output()
        .unwrap();
    assert!(third.status.success());
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), lines);
    std::fs::remove_file(&cache).unwrap();
}

#[test]
fn conjecture_on_c4() {
    let v = json(&["conjecture", "--corpus", "C]", "--which", "1", "--no-cache"]);
    assert_eq!(v["passed"], 1);
    assert_eq!(v["theorem_id"], "conj1");
}
