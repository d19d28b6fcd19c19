use std::path::{Path, PathBuf};
use std::process::Command;

use focaljet::label::Label;
use focaljet::SmoothJet;
use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_focaljet"));
    c.env_remove("FOCALJET_ORDER");
    c
}

fn run(args: &[&str]) -> (i32, Value) {
    run_cmd(bin().args(args))
}

fn run_cmd(cmd: &mut Command) -> (i32, Value) {
    let out = cmd.output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}\n{}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn coeff(re: &str) -> Value {
    json!([{ "pi": 0, "re": re, "im": "0" }])
}

#[test]
fn lift_reports_failing_antiholomorphic_term() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "gzbar2.json",
        &json!({ "order": 4, "basis": "Z", "terms": [
            { "p": 1, "q": 0, "coeff": coeff("1") },
            { "p": 0, "q": 2, "coeff": coeff("1") }
        ]}),
    );
    let (code, v) = run(&["lift", "--g", s(&g), "--order", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["liftable"], json!(false));
    assert_eq!(v["failing"], json!([[0, 2]]));
    assert_eq!(v["order"], json!(4));
}

#[test]
fn concrete_example_leading_part() {
    let (code, v) = run(&["example", "--kind", "concrete", "--a", "1", "--b", "1", "--order", "3"]);
    assert_eq!(code, 0);
    let ts: SmoothJet = serde_json::from_value(v["ts0_prime"].clone()).unwrap();
    assert_eq!(ts, SmoothJet::xy_poly(3, &[((2, 1), (2, 1)), ((0, 3), (2, 1))]));
}

#[test]
fn permutation_pair_is_equivalent_via_identity() {
    let dir = TempDir::new().unwrap();
    let (code, v) = run(&["example", "--kind", "permutation", "--order", "6"]);
    assert_eq!(code, 0);
    let l = write(&dir, "a.json", &v["l"]);
    let lp = write(&dir, "b.json", &v["l_prime"]);
    let id = write(&dir, "id.json", &v["G"]);
    let (code, v) = run(&["equivalent", "--l", s(&l), "--lp", s(&lp), "--g", s(&id), "--order", "6"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["verdict"], json!(true));
    assert_eq!(v["order"], json!(6));
}

#[test]
fn liftable_example_and_synthesis_round_trip() {
    let dir = TempDir::new().unwrap();
    let (code, v) = run(&["example", "--kind", "liftable", "--order", "5"]);
    assert_eq!(code, 0);
    let l = write(&dir, "l.json", &v["l"]);
    let lp = write(&dir, "lp.json", &v["l_prime"]);
    let g = write(&dir, "g.json", &v["G"]);
    let (code, _) = run(&["equivalent", "--l", s(&l), "--lp", s(&lp), "--g", s(&g), "--order", "5"]);
    assert_eq!(code, 0);
    // the identity does not mediate this pair
    let (_, idv) = run(&["example", "--kind", "permutation", "--order", "5"]);
    let id = write(&dir, "id.json", &idv["G"]);
    let (code, v) = run(&["equivalent", "--l", s(&l), "--lp", s(&lp), "--g", s(&id), "--order", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["certificate"]["verdict"], json!(false));
}

#[test]
fn validate_and_act() {
    let dir = TempDir::new().unwrap();
    let chain = write(&dir, "chain.json", &json!([serde_json::to_value(SmoothJet::xy_poly(4, &[((0, 1), (1, 1)), ((1, 1), (1, 1))])).unwrap()]));
    let seed = write(&dir, "seed.json", &serde_json::to_value(SmoothJet::xy_poly(4, &[((1, 1), (1, 1))])).unwrap());
    let (code, v) = run(&["generate-label", "--chain", s(&chain), "--seed", s(&seed), "--order", "4"]);
    assert_eq!(code, 0);
    let label: Label = serde_json::from_value(v["label"].clone()).unwrap();
    let lpath = write(&dir, "label.json", &v["label"]);
    let (code, v) = run(&["validate-label", "--label", s(&lpath), "--order", "4"]);
    assert_eq!((code, v["violations"].clone()), (0, json!([])));
    let (code, v) = run(&["act", "--label", s(&lpath), "--action", "z2", "--k", "1", "--order", "4"]);
    assert_eq!(code, 0);
    let acted: Label = serde_json::from_value(v["label"].clone()).unwrap();
    assert_eq!(acted, label.z2_action(1));
    // break relation 1 by editing ts_1
    let mut bad = serde_json::to_value(&label).unwrap();
    bad["ts"][1] = serde_json::to_value(SmoothJet::xy_poly(4, &[((2, 0), (1, 1))])).unwrap();
    let bpath = write(&dir, "bad.json", &bad);
    let (code, v) = run(&["validate-label", "--label", s(&bpath), "--order", "4"]);
    assert_eq!(code, 1);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn error_codes_are_distinct() {
    let dir = TempDir::new().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    let (code, v) = run(&["validate-label", "--label", s(&junk)]);
    assert_eq!((code, v["error"]["code"].clone()), (2, json!("malformed-json")));
    let wrong = write(&dir, "wrong.json", &json!({ "m": 1 }));
    let (code, v) = run(&["validate-label", "--label", s(&wrong)]);
    assert_eq!((code, v["error"]["code"].clone()), (2, json!("schema")));
    let (code, v) = run(&["validate-label", "--label", s(&dir.path().join("missing.json"))]);
    assert_eq!((code, v["error"]["code"].clone()), (2, json!("io")));
    // synthesis with a non-liftable target
    let (_, ex) = run(&["example", "--kind", "liftable", "--order", "4"]);
    let l = write(&dir, "l.json", &ex["l"]);
    let g = write(&dir, "g.json", &ex["G"]);
    let nonlift = write(&dir, "t.json", &json!([
        ex["G"],
        serde_json::to_value(SmoothJet::xy_poly(4, &[((0, 1), (1, 1)), ((1, 1), (1, 1))])).unwrap()
    ]));
    let (code, v) = run(&["synthesize", "--l", s(&l), "--targets", s(&nonlift), "--g", s(&g), "--order", "4"]);
    assert_eq!((code, v["error"]["code"].clone()), (2, json!("hypothesis")), "{v}");
    // input below the working order
    let (code, v) = run(&["validate-label", "--label", s(&l), "--order", "6"]);
    assert_eq!((code, v["error"]["code"].clone()), (2, json!("schema")));
}

#[test]
fn order_from_environment() {
    let (code, v) = run_cmd(bin().env("FOCALJET_ORDER", "4").args(["classify-corner", "--xi1", "1,0", "--xi2", "0,1"]));
    assert_eq!((code, v["order"].clone()), (0, json!(4)));
    let (_, v) = run(&["classify-corner", "--xi1", "1,0", "--xi2", "0,1"]);
    assert_eq!(v["order"], json!(6));
    let (_, v) = run_cmd(bin().env("FOCALJET_ORDER", "4").args(["classify-corner", "--xi1", "1,0", "--xi2", "0,1", "--order", "3"]));
    assert_eq!(v["order"], json!(3));
}

#[test]
fn corner_examples() {
    let (code, v) = run(&["classify-corner", "--xi1", "1,1", "--xi2", "-1,0", "--s", "1"]);
    assert_eq!(code, 0);
    assert!(v["categories"].as_array().unwrap().contains(&json!("s-fake")));
    let (_, v) = run(&["classify-corner", "--xi1", "1,1", "--xi2", "-1,1", "--s", "1"]);
    assert!(v["categories"].as_array().unwrap().contains(&json!("s-hidden")));
    let (code, v) = run(&["classify-corner", "--xi1", "1,2", "--xi2", "1,0", "--s", "0"]);
    assert_eq!((code, v["categories"].clone()), (1, json!([])));
    let (code, v) = run(&["classify-corner", "--xi1", "2,2", "--xi2", "1,0"]);
    assert_eq!((code, v["error"]["code"].clone()), (2, json!("schema")));
}

fn square_rep(c2: &str, pi_coeff: &str) -> Value {
    let ts = json!({ "order": 3, "basis": "XY", "terms": [
        { "p": 0, "q": 0, "coeff": [{ "pi": 1, "re": pi_coeff, "im": "0" }] },
        { "p": 1, "q": 0, "coeff": coeff("1") }
    ]});
    json!({
        "vertices": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
        "points": [{ "c": ["1/2", c2], "m": 1 }],
        "labels": [{ "m": 1, "order": 3, "ts": [ts], "g": [[{ "order": 3, "basis": "XY", "terms": [{ "p": 0, "q": 1, "coeff": coeff("1") }] }]] }]
    })
}

#[test]
fn representatives() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", &square_rep("1/2", "1"));
    let (code, v) = run(&["validate-rep", "--rep", s(&good), "--order", "3"]);
    assert_eq!((code, v["violations"].clone()), (0, json!([])));
    let bad = write(&dir, "bad.json", &square_rep("1/2", "0"));
    let (code, v) = run(&["validate-rep", "--rep", s(&bad), "--order", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["violations"][0]["violation"], json!("constant-term"));
    let (code, v) = run(&["orbit-equal", "--rep", s(&good), "--rep-prime", s(&good), "--order", "3"]);
    assert_eq!((code, v["witness"].clone()), (0, json!({ "k": 0, "b": "0" })));
    let (code, v) = run(&["orbit-equal", "--rep", s(&good), "--rep-prime", s(&bad), "--order", "3"]);
    assert_eq!((code, v["witness"].clone()), (1, Value::Null));
    let id = write(&dir, "id.json", &json!({ "order": 3, "basis": "XY", "terms": [{ "p": 0, "q": 1, "coeff": coeff("1") }] }));
    let (code, v) = run(&["rep-equivalent", "--rep", s(&good), "--rep-prime", s(&good), "--g", s(&id), "--order", "3"]);
    assert_eq!((code, v["verdict"].clone()), (0, json!(true)));
}

#[test]
fn admissible_and_mu() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({ "order": 3, "basis": "XY", "terms": [{ "p": 0, "q": 1, "coeff": coeff("3") }] }));
    let (code, v) = run(&["mu", "--g", s(&g), "--order", "3"]);
    assert_eq!((code, v["mu"].clone()), (0, json!("-1/2+0 i")));
    let id = write(&dir, "id.json", &json!({ "order": 3, "basis": "Z", "terms": [{ "p": 1, "q": 0, "coeff": coeff("1") }] }));
    let (code, v) = run(&["admissible", "--tuple", s(&id), "--tuple-prime", s(&id), "--order", "3"]);
    assert_eq!((code, v["verdict"].clone()), (0, json!(true)));
    let (code, v) = run(&["admissible", "--tuple", s(&id), "--tuple-prime", s(&g), "--order", "3"]);
    assert_eq!((code, v["verdict"].clone()), (1, json!(false)));
}

#[test]
fn output_is_deterministic_and_canonical() {
    let args = ["example", "--kind", "liftable", "--order", "4"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let l: Label = serde_json::from_value(v["l_prime"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&l).unwrap(), v["l_prime"]);
    // sorted keys at the top level
    let text = String::from_utf8(a).unwrap();
    let keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = bin().args(["classify-corner", "--xi1", "1,0", "--xi2", "0,1", "--out", s(&path)]).output().unwrap();
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], json!(true));
}
