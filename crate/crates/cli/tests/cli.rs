use std::path::PathBuf;
use std::process::{Command, Output};

fn graphs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../graphs")
}

fn klr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klr")).current_dir(graphs()).args(args).output().expect("klr runs")
}

fn stdout(args: &[&str]) -> String {
    let out = klr(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn multiply_examples() {
    assert_eq!(stdout(&["multiply", "-g", "a2.json", "--word", "ii: C1 C1"]), "0");
    assert_eq!(stdout(&["multiply", "-g", "a2.json", "--word", "ji: C1", "--word", "ij: C1"]), "x1[ij] + x2[ij]");
    assert_eq!(stdout(&["multiply", "-g", "a1.json", "--word", "i: D1"]), "x1[i]");
}

#[test]
fn factors_keep_command_line_order() {
    // x1 on top of the crossing, then the crossing on top of x1
    let top = stdout(&["multiply", "-g", "a1.json", "--element", "x1[ii]", "--word", "ii: C1"]);
    let bottom = stdout(&["multiply", "-g", "a1.json", "--word", "ii: C1", "--element", "x1[ii]"]);
    assert_eq!(top, "1[ii] + d1*x2[ii]");
    assert_eq!(bottom, "d1*x1[ii]");
}

#[test]
fn printed_elements_reparse() {
    for (graph, x, y) in [("a2.json", "iji: C2 D2 C1 D1", "iij: D1 C2 D3"), ("a1.json", "iii: D1 C1 D2 C2", "iii: C2 D2")] {
        let text = stdout(&["multiply", "-g", graph, "--word", x, "--word", y]);
        assert!(text.contains(" + "), "{text}");
        assert_eq!(stdout(&["multiply", "-g", graph, "--element", &text]), text);
    }
}

#[test]
fn json_element_file_round_trip() {
    let json = stdout(&["--json", "multiply", "-g", "a2.json", "--word", "ji: C1", "--word", "ij: C1"]);
    let path = std::env::temp_dir().join(format!("klr-element-{}.json", std::process::id()));
    std::fs::write(&path, &json).unwrap();
    let back = stdout(&["multiply", "-g", "a2.json", "--element", &format!("@{}", path.display())]);
    std::fs::remove_file(&path).ok();
    assert_eq!(back, "x1[ij] + x2[ij]");
}

#[test]
fn pairing_and_characters() {
    assert_eq!(stdout(&["pair", "-g", "a1.json", "i", "i"]), "1 / (1-q^2)");
    assert_eq!(stdout(&["pair", "-g", "a1.json", "i^(2)", "i^(2)"]), "1 / ((1-q^2)(1-q^4))");
    assert_eq!(stdout(&["pair", "-g", "a1.json", "i^(2)", "i^(2)", "--recursive"]), "1 / ((1-q^2)(1-q^4))");
    assert_eq!(stdout(&["shuffle", "-g", "a2.json", "i", "j"]), "ij: 1, ji: q");
    let expanded = stdout(&["pair", "-g", "a1.json", "i", "i", "--expand", "4"]);
    assert_eq!(expanded.lines().nth(1), Some("1 + q^2 + q^4 + O(q^5)"));
}

#[test]
fn json_and_text_agree() {
    let text = stdout(&["pair", "-g", "a2.json", "i j", "i j"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&["--json", "pair", "-g", "a2.json", "i j", "i j"])).unwrap();
    assert_eq!(json["text"], text.as_str());
}

#[test]
fn tightness() {
    assert!(stdout(&["tight", "-g", "a2.json", "i j^(2) i"]).starts_with("TIGHT"));
    assert_eq!(stdout(&["tight", "-g", "a2.json", "i j i"]), "NOT TIGHT: constant term 2");
    assert!(stdout(&["tight", "-g", "a1.json", "i^(3)"]).starts_with("TIGHT"));
}

#[test]
fn check_suites() {
    assert_eq!(stdout(&["check", "-g", "cycle3.json", "cycle:3"]), "alpha^2 = 0 PASS");
    assert_eq!(stdout(&["check", "-g", "cycle4.json", "cycle:4"]), "alpha^2 = -2*alpha PASS");
    assert!(stdout(&["check", "-g", "a2.json", "serre"]).lines().all(|l| l.ends_with("PASS")));
    assert!(stdout(&["check", "-g", "a2.json", "idempotents"]).lines().all(|l| l.ends_with("PASS")));
    assert!(stdout(&["check", "-g", "a2.json", "relations"]).lines().all(|l| l.ends_with("PASS")));
    let oracle = stdout(&["check", "-g", "a2xa1.json", "oracle", "--count", "40", "--orientation", "reversed"]);
    assert!(oracle.ends_with("PASS"), "{oracle}");
}

#[test]
fn quotients() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "quotient", "-g", "a1.json", "--nu", "i:1", "--cyclotomic", "i:3"])).unwrap();
    assert_eq!(json["stabilized"], true);
    for (d, n) in json["degrees"].as_object().unwrap() {
        let expected = if ["0", "2", "4"].contains(&d.as_str()) { 1 } else { 0 };
        assert_eq!(n, expected, "degree {d}");
    }
    let text = stdout(&["quotient", "-g", "a2.json", "--nu", "i:1,j:1", "--symplus"]);
    assert!(text.contains("total: 4"), "{text}");
    let text = stdout(&["quotient", "-g", "a1.json", "--nu", "i:1", "--cyclotomic", "i:0", "--field", "Fp:5"]);
    assert!(text.contains("total: 0"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(klr(&["multiply", "-g", "a2.json", "--word", "iq: C1"]).status.code(), Some(2));
    assert_eq!(klr(&["multiply", "-g", "a2.json", "--word", "ij: C3"]).status.code(), Some(2));
    assert_eq!(klr(&["multiply", "-g", "a2.json", "--word", "ij: D1", "--word", "ii: D1"]).status.code(), Some(2));
    assert_eq!(klr(&["check", "-g", "a2.json", "nope"]).status.code(), Some(2));
    assert_eq!(klr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(klr(&["pair", "-g", "missing.json", "i", "i"]).status.code(), Some(2));
    assert_eq!(klr(&["quotient", "-g", "a1.json", "--nu", "i:1", "--symplus", "--cutoff", "1", "--window", "3"]).status.code(), Some(2));
}
