use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobdim")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decide_reports_are_byte_identical_across_runs() {
    let f = corpus("triple_line_free.frob");
    let args = ["--json", "decide", f.to_str().unwrap()];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verdict"]["outcome"], "FiniteFlatDim");
    assert_eq!(v["verdict"]["theorem_used"], "cm-threshold");
    assert_eq!(v["ring"]["invariants"]["multiplicity"], 3);
}

#[test]
fn subcommands_produce_their_sections() {
    let inv = json(&["--json", "invariants", corpus("node_k.frob").to_str().unwrap()]);
    assert_eq!(inv["ring"]["invariants"]["dim"], 1);
    assert_eq!(inv["ring"]["invariants"]["is_ci"], true);

    let tor = json(&["--json", "tor-table", corpus("node_k.frob").to_str().unwrap()]);
    let push = json(&["--json", "tor-table", "--route", "pushforward", corpus("node_k.frob").to_str().unwrap()]);
    assert_eq!(tor["tables"], push["tables"]);
    assert_eq!(tor["tables"]["Tor(1,1)"]["vanishes"], false);

    let ext = json(&["--json", "ext-table", corpus("dual_numbers_free.frob").to_str().unwrap()]);
    assert_eq!(ext["tables"]["Ext(1,1)"]["vanishes"], true);

    let oracle = json(&["--json", "oracle", corpus("node_line.frob").to_str().unwrap()]);
    assert_eq!(oracle["oracle_pd"], 1);
    let oracle = json(&["--json", "oracle", corpus("node_k.frob").to_str().unwrap()]);
    assert_eq!(oracle["oracle_pd"], "inf");
}

#[test]
fn text_output() {
    let out = run(&["decide", corpus("node_k.frob").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict   InfiniteFlatDim  via ps-direction"), "{text}");
}

#[test]
fn verify_corpus_is_consistent() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let out = run(&["--json", "--seed", "5", "verify-corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["corpus"]["violations"], 0);
    assert_eq!(v["corpus"]["entries"].as_array().unwrap().len(), 60);
}

#[test]
fn exit_codes() {
    let f = corpus("node_k.frob");
    let f = f.to_str().unwrap();
    assert_eq!(run(&["decide", f]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["decide", "/nonexistent.frob"]).status.code(), Some(1));
    assert_eq!(run(&["--budget", "1", "decide", f]).status.code(), Some(2));
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    assert_eq!(run(&["--budget", "1", "verify-corpus", dir.to_str().unwrap()]).status.code(), Some(2));

    let bad = std::env::temp_dir().join(format!("frobdim-bad-{}.frob", std::process::id()));
    std::fs::write(&bad, "[ring]\np = 4\nvars = x\n").unwrap();
    let out = run(&["decide", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    std::fs::remove_file(&bad).unwrap();
}
