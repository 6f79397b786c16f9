use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn yoshida(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yoshida"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures/n17")
        .join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn lift_writes_expansion_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lift.json");
    let o = yoshida(&["lift", "--fixture", "n17", "--bound", "100", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["bound"], 100);
    let entry = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e[0] == 2 && e[1] == 1 && e[2] == 3)
        .expect("entry [2, 1, 3]");
    assert_eq!(entry[3], "32");
}

#[test]
fn classset_from_files() {
    let o = yoshida(&[
        "classset",
        "--algebra",
        s(&fixture("algebra.json")),
        "--order",
        s(&fixture("r1.json")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class_number"], 2);
    assert_eq!(v["type_number"], 2);
    assert_eq!(v["mass"], "2/3");
    // algebra_ref is resolved next to the order file
    let o2 = yoshida(&["classset", "--order", s(&fixture("r1.json"))]);
    assert!(o2.status.success(), "{}", stderr(&o2));
    assert_eq!(o.stdout, o2.stdout);
}

#[test]
fn roundtrip_is_byte_exact() {
    for name in ["algebra.json", "r1.json", "r2.json", "i12.json", "golden.json"] {
        let o = yoshida(&["roundtrip", "--input", s(&fixture(name))]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert_eq!(o.stdout, fs::read(fixture(name)).unwrap(), "{name}");
    }
}

#[test]
fn rationals_are_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e.json");
    fs::write(
        &f,
        r#"{"weight": 3, "level": 17, "bound": 20, "entries": [[2, 1, 2, "-96/1"], [1, 1, 3, "4/6"]]}"#,
    )
    .unwrap();
    let o = yoshida(&["roundtrip", "--input", s(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("\"-96\""));
    assert!(text.contains("\"2/3\""));
    assert!(!text.contains("-96/1"));
}

#[test]
fn non_closed_order_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixture("algebra.json"), dir.path().join("algebra.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(fixture("r1.json")).unwrap()).unwrap();
    doc["basis"][1][1] = Value::from("1/2");
    let f = dir.path().join("bad.json");
    fs::write(&f, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let o = yoshida(&["roundtrip", "--input", s(&f)]);
    assert!(!o.status.success());
    let e = stderr(&o);
    assert!(e.contains("not closed under multiplication"), "{e}");
    assert!(e.contains("basis pair (1, 1)"), "{e}");
    assert!(e.contains("bad.json"), "{e}");
}

#[test]
fn malformed_input_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("broken.json");
    fs::write(&f, "{\n  \"weight\": 3,\n  \"level\": oops\n}\n").unwrap();
    let o = yoshida(&["hecke", "--input", s(&f), "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("broken.json"), "{e}");
    assert!(e.contains("line 3"), "{e}");
}

#[test]
fn hecke_reports_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let lift = dir.path().join("lift.json");
    let out = dir.path().join("t2.json");
    assert!(
        yoshida(&["lift", "--fixture", "n17", "--bound", "400", "--out", s(&lift)])
            .status
            .success()
    );
    let o = yoshida(&["hecke", "--input", s(&lift), "--p", "2", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("eigenvalue at 2: -5"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["bound"], 100);
}

#[test]
fn bad_primes_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let lift = dir.path().join("lift.json");
    assert!(
        yoshida(&["lift", "--fixture", "n17", "--bound", "40", "--out", s(&lift)])
            .status
            .success()
    );
    let o = yoshida(&["hecke", "--input", s(&lift), "--p", "17"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("divides the level"));
    let o = yoshida(&["brandt", "--fixture", "n17", "--p", "17"]);
    assert!(!o.status.success());
}

#[test]
fn eigenforms_lists_both_newforms() {
    let o = yoshida(&["eigenforms", "--fixture", "n17", "--nu", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let evs: Vec<&Value> = v.as_array().unwrap().iter().map(|c| &c["eigenvalues"]["2"]).collect();
    assert!(evs.contains(&&Value::from("3")));
    assert!(evs.contains(&&Value::from("-1")));
}

#[test]
fn lfactor_prints_polynomials() {
    let o = yoshida(&[
        "lfactor", "--p", "2", "--af", "-3", "--ag", "-1", "--n", "3", "--level", "17",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("1 - 16*X^2"));
    assert!(text.contains("pole"));
}

#[test]
fn verify_example_passes() {
    let o = yoshida(&["verify-example"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(o.status.success(), "{text}");
    assert!(text.contains("13 of 13 match"));
    assert!(!text.contains("FAIL"));
}
