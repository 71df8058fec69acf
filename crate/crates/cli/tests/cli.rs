use std::path::Path;
use std::process::{Command, Output};

fn codent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codent")).args(args).output().expect("spawn codent")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_corrupted_q8(dir: &Path) -> std::path::PathBuf {
    // q8 with its first generator's last entry changed from 3 to 2
    let text = r#"{"modulus": 4, "n": 8, "rows": [[0, 0, 1, 1, 0, 2, 1, 2], [0, 0, 0, 2, 1, 3, 1, 1],
        [1, 1, 0, 2, 0, 0, 1, 3], [0, 2, 0, 2, 0, 2, 0, 2], [0, 0, 0, 0, 0, 0, 2, 2]]}"#;
    let p = dir.join("q8_bad.json");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn emit_phi_chi_is_stable() {
    let a = codent(&["emit", "matrix", "phi_chi"]);
    let b = codent(&["emit", "matrix", "phi_chi"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 6);

    let j = codent(&["emit", "matrix", "phi_chi", "--format", "json"]);
    assert!(j.status.success());
    serde_json::from_slice::<serde_json::Value>(&j.stdout).unwrap();
}

#[test]
fn unknown_ids_exit_2() {
    assert_eq!(codent(&["emit", "poly", "nope"]).status.code(), Some(2));
    assert_eq!(codent(&["code", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(codent(&["invariance", "W_nope"]).status.code(), Some(2));
    assert_eq!(codent(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bundled_code_passes() {
    let o = codent(&["code", "k8"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 256);
    assert_eq!(v["type_ii"], true);
}

#[test]
fn corrupted_code_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_corrupted_q8(dir.path());
    let o = codent(&["code", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn swe_writes_json_that_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = codent(&["swe", "--codes", "e8", "k8", "--format", "json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let w: codent::SwePoly = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(w, codent::catalog::printed_poly("W_E8_K8").unwrap());

    let inv = codent(&["invariance", out.to_str().unwrap()]);
    assert!(inv.status.success(), "{}", stdout(&inv));
}

#[test]
fn independence_degree8() {
    let o = codent(&["independence", "--degree", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("det = 96"));
    let bad = codent(&["independence", "--polys", "W_E8_Q8", "--monomials", "a^8", "b^8"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_paper_skip_g_and_corrupted_q8() {
    let o = codent(&["verify-paper", "--skip-G"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("order-G: SKIP"), "{text}");
    assert!(text.trim_end().ends_with("overall: PASS"));

    let dir = tempfile::tempdir().unwrap();
    let bad = write_corrupted_q8(dir.path());
    let arg = format!("q8={}", bad.display());
    let o = codent(&["verify-paper", "--skip-G", "--code", &arg]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{text}");
    assert!(text.contains("codes: FAIL"), "{text}");
    assert!(text.contains("swe-degree8: FAIL"), "{text}");
    assert!(text.trim_end().ends_with("overall: FAIL"));
}
