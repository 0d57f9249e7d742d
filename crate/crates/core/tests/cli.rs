use std::fs;
use std::path::{Path, PathBuf};

use fraisse::families::chain;
use fraisse::structure::FinStructure;
use tempfile::TempDir;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn call(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fraisse").chain(args.iter().copied());
    let code = fraisse::cli::run(argv, &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_chain(dir: &TempDir, k: usize) -> PathBuf {
    let o = call(&["gen", "--family", "chain", "--level", &k.to_string()]);
    assert_eq!(o.code, 0, "{}", o.err);
    write(dir, &format!("chain{k}.json"), &o.out)
}

#[test]
fn gen_arc_level_two_is_chain_five() {
    let o = call(&["gen", "--family", "arc", "--level", "2"]);
    assert_eq!(o.code, 0);
    let s: FinStructure = serde_json::from_str(&o.out).unwrap();
    assert_eq!(s, chain(5));
}

#[test]
fn gen_cantor_beyond_depth_is_an_error() {
    assert_eq!(call(&["gen", "--family", "cantor-dyadic", "--level", "3", "--depth", "2"]).code, 2);
    assert_eq!(call(&["gen", "--family", "cantor-dyadic", "--level", "2", "--depth", "2"]).code, 0);
}

#[test]
fn validate_and_relationalize() {
    let dir = TempDir::new().unwrap();
    let good = gen_chain(&dir, 3);
    let o = call(&["validate", s(&good)]);
    assert_eq!(o.code, 0, "{}", o.err);

    let bad = write(
        &dir,
        "bad.json",
        r#"{"signature":{"relations":[{"name":"R","arity":2},{"name":"<=","arity":2}],"distinguished":"R"},
            "size":2,"interp":{"R":[[0,5]],"<=":[]}}"#,
    );
    let o = call(&["validate", s(&bad)]);
    assert_eq!(o.code, 1, "{} {}", o.out, o.err);

    let o = call(&["relationalize", s(&good)]);
    assert_eq!(o.code, 0, "{}", o.err);
    let back: FinStructure = serde_json::from_str(&o.out).unwrap();
    assert_eq!(back, chain(3));
}

#[test]
fn epis_variants() {
    let dir = TempDir::new().unwrap();
    let (c3, c2) = (gen_chain(&dir, 3), gen_chain(&dir, 2));
    let o = call(&["epis", s(&c3), s(&c2), "--count-only"]);
    assert_eq!((o.code, o.out.trim()), (0, "2"));

    let o = call(&["epis", s(&c3), s(&c2), "--unique"]);
    assert_eq!(o.code, 1);
    assert!(o.out.contains("multiple"), "{}", o.out);
    assert_eq!(call(&["epis", s(&c2), s(&c2), "--unique"]).code, 0);

    let witness = dir.path().join("w.json");
    let o = call(&["epis", s(&c3), s(&c2), "--witness", s(&witness)]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&witness).unwrap()).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["morphisms"][0]["map"], serde_json::json!([0, 0, 1]));
}

#[test]
fn check_family_reports() {
    let o = call(&["check-family", "--family", "chain", "--jpp", "--bounds", "pair_bound=3,search_bound=9"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["status"], "verified-within-bounds");
    assert_eq!(v["bounds"]["search_bound"], 9);

    let o = call(&["check-family", "--family", "cantor-dyadic", "--rigidity", "--depth", "4"]);
    assert_eq!(o.code, 0, "{}", o.err);

    let o = call(&["check-family", "--family", "arc", "--rigidity", "--depth", "3"]);
    assert_eq!(o.code, 1);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["status"], "counterexample");
}

#[test]
fn check_family_witness_file_reverifies() {
    let dir = TempDir::new().unwrap();
    let witness = dir.path().join("ap.json");
    let o = call(&["check-family", "--family", "chain", "--ap", "--witness", s(&witness)]);
    assert_eq!(o.code, 0, "{}", o.err);
    let report: fraisse::family::PropertyReport =
        serde_json::from_str(&fs::read_to_string(&witness).unwrap()).unwrap();
    assert!(report.verified());
    report.reverify().unwrap();
}

#[test]
fn certify_and_quotient() {
    let o = call(&["certify", "--family", "arc", "--rel", "R", "--property", "transitive", "--depth", "3"]);
    assert_eq!(o.code, 1);
    assert!(o.out.contains("refuted"));
    let o = call(&["certify", "--family", "arc", "--rel", "<=", "--property", "total", "--depth", "3"]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.out.contains("certified"));
    assert_eq!(call(&["certify", "--family", "arc", "--property", "dense", "--depth", "1"]).code, 2);

    let o = call(&["quotient", "--family", "arc", "--level", "1", "--format", "dot"]);
    assert_eq!(o.out, "graph {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n");
    assert_eq!(call(&["quotient", "--family", "arc", "--level", "1", "--format", "svg"]).code, 2);
}

#[test]
fn construct_verbs() {
    let o = call(&["construct", "product", "--inputs", "arc", "arc", "--level", "1", "--quotient", "json"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 20);

    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.json", r#"{"vertices":3,"edges":[[0,1],[1,2],[2,0]]}"#);
    let o = call(&["construct", "graph", "--inputs", s(&tri), "--level", "1", "--quotient", "json"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);

    let o = call(&["construct", "sum", "--inputs", "arc", "singleton", "--level", "0"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let s3: FinStructure = serde_json::from_str(&o.out).unwrap();
    assert_eq!(s3.size(), 3);
}

#[test]
fn errors_exit_two() {
    assert_eq!(call(&["frobnicate"]).code, 2);
    assert_eq!(call(&["validate", "/nonexistent/file.json"]).code, 2);
    assert_eq!(call(&["quotient", "--family", "nonsense(", "--level", "0"]).code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["check-family", "--family", "chain", "--ap", "--size-bound", "3", "--search-bound", "5"];
    let a = call(&args);
    let b = call(&args);
    assert_eq!(a.out, b.out);
    assert!(!a.out.is_empty());
}

#[test]
fn accept_runs_the_suite() {
    let o = call(&["accept", "--suite", "core"]);
    assert_eq!(o.code, 0, "{}\n{}", o.out, o.err);
    assert_eq!(o.out.lines().filter(|l| l.contains("PASS")).count(), 10, "{}", o.out);
    assert_eq!(call(&["accept", "--suite", "extended"]).code, 2);
}
