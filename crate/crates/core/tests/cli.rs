use std::path::Path;

use orientkit::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("orientkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const K4: &str = "v a\nv b\nv c\nv d\ne a b 1\ne a c 1\ne a d 1\ne b c 1\ne b d 1\ne c d 1\n";
const BRIDGE: &str = "e a b 1\ne b c 1\ne a c 1\ne c x 1\n";

#[test]
fn orient_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.mg", K4);
    let o = dir.path().join("o.json").to_string_lossy().into_owned();
    let (code, out, _) = call(&["orient", "--graph", &g, "--mode", "karc:1", "--method", "exact", "--out", &o]);
    assert_eq!(code, 0);
    assert!(out.contains("\"dir\""));
    assert_eq!(call(&["check", "--graph", &g, "--orient", &o, "--mode", "karc:1"]).0, 0);
    assert_eq!(call(&["check", "--graph", &g, "--orient", &o, "--mode", "karc:2"]).0, 1);
    let (code, out, _) = call(&["lambda", "--graph", &g, "--source", "a", "--target", "b", "--oriented", &o]);
    assert_eq!((code, out.trim()), (0, "1"));
}

#[test]
fn bridge_is_unsat() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bridge.mg", BRIDGE);
    let (code, out, _) = call(&["--json", "orient", "--graph", &g, "--mode", "karc:1"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["status"], "unsat");
    assert_eq!(v["result"]["certificate"]["cut"]["edges"][0], "c-x-0");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["--no-such-flag"]).0, 2);
    assert_eq!(call(&["lambda", "--graph", "/nonexistent.mg", "--source", "a", "--target", "b"]).0, 2);
    assert_eq!(call(&["ends", "--family", "nope", "--depth", "2"]).0, 2);
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["--json", "toporeach", "--family", "one_way_ladder", "--roots", "a:0,b:0", "--preset", "ladder-through-end", "--source", "a:0", "--target", "b:0", "--inner", "3", "--inner-to", "7", "--outer", "8"];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn expand_emits_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.mg", K4);
    let e = dir.path().join("x.mg").to_string_lossy().into_owned();
    let m = dir.path().join("map.json").to_string_lossy().into_owned();
    let (code, _, _) = call(&["expand", "--graph", &g, "--targets", "a", "--mode", "kray:2", "--emit", &e, "--emit-map", &m]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&e).unwrap();
    assert!(text.contains("(a,0)"));
    assert!(std::fs::read_to_string(&m).unwrap().contains("kray:2"));
}

#[test]
fn decomposition_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.mg", K4);
    let p = write(dir.path(), "parts.json", r#"{"parts": [["a-b-0","b-c-0","c-d-0","a-d-0"], ["a-c-0","b-d-0"]]}"#);
    assert_eq!(call(&["decomp", "bondfaithful", "--graph", &g, "--parts", &p, "--cap", "2"]).0, 1);
    assert_eq!(call(&["decomp", "verify", "--graph", &g, "--parts", &p]).0, 1);
}

#[test]
fn flimit_extract_and_selftest_single() {
    let (code, out, _) = call(&["flimit", "extract", "--family", "k_column_ladder:4", "--roots", "a:0,b:0,c:0,d:0", "--window", "3", "--upto", "10", "--serpentine", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert_eq!(call(&["selftest", "--suite", "paper", "--only", "8"]).0, 0);
    assert_eq!(call(&["selftest", "--suite", "other"]).0, 2);
}

#[test]
fn edge_cap_from_environment() {
    // the only test touching the variable
    std::env::set_var("ORIENTKIT_EDGE_CAP", "10");
    let code = call(&["gen", "--family", "grid", "--depth", "5"]).0;
    std::env::remove_var("ORIENTKIT_EDGE_CAP");
    assert_eq!(code, 2);
}
