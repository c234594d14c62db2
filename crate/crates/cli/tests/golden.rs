//! Golden-file tests for the command-line examples. Set `UPDATE_GOLDEN=1`
//! to rewrite the expected outputs after an intentional format change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modsym"))
        .args(args)
        .current_dir(manifest_dir())
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn golden(name: &str, args: &[&str]) -> String {
    let text = stdout(args);
    let path: PathBuf = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).expect("write golden file");
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, expected, "output of {args:?} differs from {}", path.display());
    text
}

fn json(name: &str, args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--out", "json"]);
    let doc: Value = serde_json::from_str(&golden(name, &full)).expect("valid JSON");
    assert_eq!(doc["schema_version"], "1");
    doc
}

fn field<'a>(doc: &'a Value, key: &str) -> &'a str {
    doc["result"][key].as_str().unwrap_or_else(|| panic!("missing {key}"))
}

#[test]
fn dims_gamma0_11() {
    let doc = json("dims-gamma0-11-q.json", &["dims", "--group", "gamma0:11", "--weight", "2", "--ring", "q"]);
    assert_eq!(field(&doc, "manin"), "3");
    assert_eq!(field(&doc, "cuspidal"), "2");
    assert_eq!(field(&doc, "eisenstein"), "1");
    assert_eq!(field(&doc, "genus"), "1");
    assert_eq!(field(&doc, "cusps"), "2");
    golden("dims-gamma0-11-q.txt", &["dims", "--group", "gamma0:11", "--weight", "2", "--ring", "q"]);
}

#[test]
fn dims_delta5() {
    let args = ["dims", "--group", "perm-file:data/delta5.json", "--weight", "2", "--ring", "q"];
    let doc = json("dims-delta5-q.json", &args);
    assert_eq!(field(&doc, "manin"), "0");
    assert_eq!(field(&doc, "h1_par"), "0");
    assert_eq!(field(&doc, "genus"), "0");
    golden("dims-delta5-q.txt", &args);
}

#[test]
fn dims_mod_2_dominates_rational_ranks() {
    let base = ["dims", "--group", "gamma0:11", "--weight", "2", "--ring"];
    let q = json("dims-gamma0-11-q.json", &[&base[..], &["q"]].concat());
    let f2 = json("dims-gamma0-11-fp2.json", &[&base[..], &["fp:2"]].concat());
    let keys = [
        "manin", "cuspidal", "eisenstein", "boundary", "h1", "h1_par", "surface_h1", "surface_h1_par",
        "genus", "cusps", "elliptic", "torsion",
    ];
    for key in keys {
        assert!(!f2["result"][key].is_null(), "{key} missing");
    }
    for key in &keys[..8] {
        let a: u64 = field(&f2, key).parse().unwrap();
        let b: u64 = field(&q, key).parse().unwrap();
        assert!(a >= b, "{key}: F_2 {a} < Q {b}");
    }
    golden("dims-gamma0-11-fp2.txt", &[&base[..], &["fp:2"]].concat());
}

#[test]
fn qexp_gamma0_11() {
    let args = ["qexp", "--group", "gamma0:11", "--weight", "2", "--bound", "10"];
    let doc = json("qexp-gamma0-11.json", &args);
    let pieces = doc["result"]["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 1);
    let a: Vec<&str> = pieces[0]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(a, ["1", "-2", "-1", "2", "1", "2", "-2", "0", "-2", "-2"]);
    golden("qexp-gamma0-11.txt", &args);
}

#[test]
fn compare_gamma0_11() {
    let args = ["compare", "--group", "gamma0:11", "--weight", "2", "--ring", "q"];
    let doc = json("compare-gamma0-11-q.json", &args);
    assert_eq!(field(&doc, "verdict"), "isomorphic");
    assert_eq!(field(&doc, "kernel_dimension"), "0");
    let ranks = &doc["result"]["ranks"];
    assert_eq!(ranks["manin"], ranks["surface_h1"]);
    assert_eq!(ranks["cuspidal"], ranks["surface_h1_par"]);
    golden("compare-gamma0-11-q.txt", &args);
}

#[test]
fn compare_delta4_mod_2() {
    let args = ["compare", "--group", "perm-file:data/delta4-self.json", "--weight", "2", "--ring", "fp:2"];
    let doc = json("compare-delta4-fp2.json", &args);
    assert_eq!(field(&doc, "verdict"), "kernel dimension 1, local terms dimension 1");
    golden("compare-delta4-fp2.txt", &args);
}

#[test]
fn hecke_gamma0_11() {
    let args = ["hecke", "--group", "gamma0:11", "--weight", "2", "--op", "T2"];
    let doc = json("hecke-gamma0-11-t2.json", &args);
    // (x + 2)² on the cuspidal part, x − 3 on the Eisenstein line
    assert_eq!(field(&doc, "charpoly_text"), "x^3 + x^2 - 8*x - 12");
    golden("hecke-gamma0-11-t2.txt", &args);
}

#[test]
fn output_is_deterministic() {
    let args = ["compare", "--group", "gamma1:5", "--weight", "3", "--ring", "fp:3", "--out", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["dims", "--group", "gamma2:5"]), Some(2));
    assert_eq!(code(&["dims", "--group", "gamma0:5", "--ring", "fp:4"]), Some(2));
    // odd weight has no projective module
    assert_eq!(code(&["dims", "--group", "perm-file:data/delta5.json", "--weight", "3"]), Some(2));
    assert_eq!(code(&["hecke", "--group", "perm-file:data/delta5.json", "--op", "T2"]), Some(3));
    assert_eq!(code(&["qexp", "--group", "gamma0:11", "--ring", "z"]), Some(3));
    assert_eq!(code(&["dims", "--group", "gamma0:11"]), Some(0));
}
