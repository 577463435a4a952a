//! Command-line behaviour: byte-compared golden outputs and exit codes.
//! `UPDATE_GOLDEN=1 cargo test --test cli` rewrites the golden files.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nonsimple"))
        .args(args)
        .current_dir(dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn nonsimple");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn golden(name: &str, args: &[&str], code: i32) {
    let (got_code, got) = run(args, None);
    assert_eq!(got_code, code, "{name}: exit code, output {got}");
    let path = dir().join("golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name}: output differs from {}", path.display());
}

fn kind(out: &str) -> String {
    let v: Value = serde_json::from_str(out).unwrap();
    v["kind"].as_str().unwrap().to_string()
}

#[test]
fn equations() {
    golden("equations_g2_k1_t2", &["equations", "--g", "2", "--k", "1", "--type", "2"], 0);
    golden("equations_g4_k2_t1_2", &["equations", "--g", "4", "--k", "2", "--type", "1,2"], 0);
}

#[test]
fn equations_example_text() {
    let (code, out) = run(&["equations", "--g", "2", "--k", "1", "--type", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"proportionality\":[[1,1,2]],\"vanishing\":[]}\n");
}

#[test]
fn detect() {
    golden("detect_humbert_p2", &["detect", "--z", "fixtures/humbert_p2.json", "--height", "3"], 0);
    golden("detect_hand_all", &["detect", "--z", "fixtures/hand.json", "--height", "2", "--all-discriminants"], 0);
    let (_, out) = run(&["detect", "--z", "fixtures/humbert_p2.json", "--height", "3"], None);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["rel"] == serde_json::json!([-1, 2, 0, 0, 0]) && r["delta"] == 4));
}

#[test]
fn detect_jobs_agree() {
    let (_, one) = run(&["detect", "--z", "fixtures/hand.json", "--height", "4"], None);
    let (_, four) = run(&["--jobs", "4", "detect", "--z", "fixtures/hand.json", "--height", "4"], None);
    assert_eq!(one, four);
}

#[test]
fn validate() {
    golden("validate_ok", &["validate", "--z", "fixtures/humbert_p2.json", "--type", "1,1"], 0);
    golden("validate_notposdef", &["validate", "--z", "fixtures/notposdef.json", "--type", "1,1"], 1);
    let (_, out) = run(&["validate", "--z", "fixtures/notposdef.json", "--type", "1,1"], None);
    assert_eq!(kind(&out), "NotSiegel");
}

#[test]
fn construct_and_certify() {
    golden("construct_p2", &["construct", "--zm", "fixtures/zm_1.json", "--zn", "fixtures/zn_1.json", "--type", "2"], 0);
    golden("construct_g3", &["construct", "--zm", "fixtures/zm_1.json", "--zn", "fixtures/zn_2.json", "--type", "3"], 0);

    let (_, out) = run(&["construct", "--zm", "fixtures/zm_1.json", "--zn", "fixtures/zn_1.json", "--type", "2"], None);
    let v: Value = serde_json::from_str(&out).unwrap();
    let tmp = std::env::temp_dir().join(format!("nonsimple-cli-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let z = tmp.join("z.json");
    let c = tmp.join("c.json");
    std::fs::write(&z, v["z_a"].to_string()).unwrap();
    std::fs::write(&c, v["c_m"].to_string()).unwrap();
    let (zs, cs) = (z.to_str().unwrap(), c.to_str().unwrap());

    let (code, out) = run(&["certify", "--z", zs, "--c", cs, "--type", "2"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), v["certificate"]);

    let (code, out) = run(&["certify", "--z", zs, "--c", cs, "--type", "3"], None);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(report["kind"], "CertificateFailed");

    let (code, out) = run(&["restrict", "--z", zs, "--c", cs], None);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), serde_json::json!({"type": [2], "primitive": true}));

    let (code, out) = run(&["complement", "--z", zs, "--type", "2"], None);
    assert_eq!(code, 0);
    let zn: Value = serde_json::from_str(&std::fs::read_to_string(dir().join("fixtures/zn_1.json")).unwrap()).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["z_n"], zn);
    std::fs::remove_dir_all(&tmp).ok();
}

#[test]
fn complement() {
    golden("complement_humbert_p2", &["complement", "--z", "fixtures/humbert_p2.json", "--type", "2"], 0);
}

#[test]
fn quotient() {
    golden("quotient_p2_0", &["quotient", "--zm", "fixtures/zm_1.json", "--zn", "fixtures/zn_1.json", "--type", "2", "--subgroup-index", "0"], 0);
    let (code, out) = run(&["quotient", "--zm", "fixtures/zm_1.json", "--zn", "fixtures/zn_1.json", "--type", "2", "--subgroup-index", "6"], None);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn enumerate_allowed() {
    golden("enumerate_allowed_2", &["enumerate-allowed", "--type", "2"], 0);
    for (t, n) in [("3", 24), ("2,2", 720)] {
        let (code, out) = run(&["enumerate-allowed", "--type", t], None);
        assert_eq!(code, 0);
        assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["count"], n);
    }
}

#[test]
fn sample_is_seeded() {
    golden("sample_g3_k1_t2_s7", &["sample", "--g", "3", "--k", "1", "--type", "2", "--seed", "7", "--height", "4"], 0);
    let a = run(&["sample", "--g", "4", "--k", "2", "--type", "1,2", "--seed", "11", "--height", "5"], None);
    let b = run(&["sample", "--g", "4", "--k", "2", "--type", "1,2", "--seed", "11", "--height", "5"], None);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn float_digits_keep_exact_values() {
    let (code, out) = run(&["--float-digits", "3", "complement", "--z", "fixtures/humbert_p2.json", "--type", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"z_n\":[[{\"approx\":\"0.000+8.000i\",\"im\":\"8\",\"re\":\"0\"}]]}\n");
}

#[test]
fn stdin_input() {
    let text = std::fs::read_to_string(dir().join("fixtures/humbert_p2.json")).unwrap();
    let (code, piped) = run(&["complement", "--z", "-", "--type", "2"], Some(&text));
    assert_eq!(code, 0);
    assert_eq!(piped, run(&["complement", "--z", "fixtures/humbert_p2.json", "--type", "2"], None).1);
    let (code, out) = run(&["construct", "--zm", "-", "--zn", "-", "--type", "2"], Some("[[{\"im\":\"1\"}]]"));
    assert_eq!(code, 2);
    assert_eq!(kind(&out), "Parse");
}

#[test]
fn malformed_input() {
    for args in [
        &["validate", "--z", "fixtures/malformed.json", "--type", "1,1"][..],
        &["validate", "--z", "fixtures/missing.json", "--type", "1,1"],
        &["validate", "--z", "fixtures/humbert_p2.json", "--type", "2,3"],
        &["equations", "--g", "2", "--k", "1"],
        &["no-such-command"],
    ] {
        let (code, out) = run(args, None);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!kind(&out).is_empty());
    }
    assert_eq!(run(&["--help"], None).0, 0);
}
