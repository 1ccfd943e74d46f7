//! End-to-end tests of the `donaldson` binary: output contracts and
//! the exit-code contract (0 ok, 1 verification failure, 2 parse,
//! 3 validation, 4 computation precondition).

use std::path::PathBuf;
use std::process::{Command, Output};

use donaldson::manifest::ManifoldFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_donaldson"))
}

fn workdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "donaldson-bin-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn fixture_path(dir: &std::path::Path) -> PathBuf {
    let path = dir.join("k3_two_blowups.json");
    std::fs::write(&path, ManifoldFile::k3_two_blowups().canonical_json()).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim_end().to_string()
}

#[test]
fn eval_prints_the_canonical_series() {
    let dir = workdir();
    let path = fixture_path(&dir);
    let out = bin()
        .args(["eval", "--manifold"])
        .arg(&path)
        .args(["--class", "s*sigma"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(1/4)*exp(2*s) - (1/4)*exp(-2*s)");
    // the combined series agrees on this class
    let out = bin()
        .args(["eval", "--manifold"])
        .arg(&path)
        .args(["--class", "s*sigma", "--combined"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "(1/4)*exp(2*s) - (1/4)*exp(-2*s)");
    // the printed value parses back into the library
    let parsed: donaldson::ExpElement = stdout(&out).parse().unwrap();
    assert_eq!(parsed.term_count(), 2);
}

#[test]
fn eval_exit_codes() {
    let dir = workdir();
    let path = fixture_path(&dir);
    // unknown class names are parse errors
    let out = bin()
        .args(["eval", "--manifold"])
        .arg(&path)
        .args(["--class", "s*nope"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // malformed vector length is a named validation failure
    let mut file = ManifoldFile::k3_two_blowups();
    file.classes.insert("bad".into(), vec![1, 2]);
    let bad = dir.join("bad-length.json");
    std::fs::write(&bad, file.canonical_json()).unwrap();
    let out = bin()
        .args(["eval", "--manifold"])
        .arg(&bad)
        .args(["--class", "s*sigma"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vector length"));
    // an invalid surface class is a validation failure
    let mut file = ManifoldFile::k3_two_blowups();
    file.classes.insert("sigma".into(), vec![1, 0, 0, 0]);
    let bad = dir.join("bad-sigma.json");
    std::fs::write(&bad, file.canonical_json()).unwrap();
    let out = bin()
        .args(["eval", "--manifold"])
        .arg(&bad)
        .args(["--class", "s*sigma"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sigma self-intersection"));
    // empty, unparsable file
    let empty = dir.join("broken.json");
    std::fs::write(&empty, "{").unwrap();
    let out = bin()
        .args(["eval", "--manifold"])
        .arg(&empty)
        .args(["--class", "s*sigma"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn glue_writes_the_report() {
    let dir = workdir();
    let path = fixture_path(&dir);
    let report = dir.join("report.json");
    let out = bin()
        .args(["glue", "--m1"])
        .arg(&path)
        .arg("--m2")
        .arg(&path)
        .args(["--probe", "s*sigma + t*d", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["coefficient_magnitude"], "32");
    assert_eq!(doc["topology"]["euler"], 56);
    assert_eq!(doc["topology"]["signature"], -36);
    assert_eq!(doc["topology"]["b_plus"], 9);
    let rules = doc["rules"].as_array().unwrap();
    let nonzero: Vec<_> = rules.iter().filter(|r| r["sum"] != "0").collect();
    assert_eq!(nonzero.len(), 2);
    let sums: Vec<&str> = nonzero.iter().map(|r| r["sum"].as_str().unwrap()).collect();
    assert!(sums.contains(&"2") && sums.contains(&"-2"));
    assert_eq!(
        doc["probe"]["value"],
        "2*exp(2*s + 2*t + s*t) - 2*exp(-2*s - 2*t + s*t)"
    );
}

#[test]
fn glue_exit_codes() {
    let dir = workdir();
    let path = fixture_path(&dir);
    // genus 3 on both sides: validation failure (only the coefficient
    // predictor supports higher genus)
    let mut g3 = ManifoldFile::k3_two_blowups();
    g3.genus = 3;
    let g3path = dir.join("genus3.json");
    std::fs::write(&g3path, g3.canonical_json()).unwrap();
    let out = bin()
        .args(["glue", "--m1"])
        .arg(&g3path)
        .arg("--m2")
        .arg(&g3path)
        .args(["--out"])
        .arg(dir.join("never.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // a probe across the neck without dbar classes: normalization error
    let mut nodbar = ManifoldFile::k3_two_blowups();
    nodbar.classes.remove("dbar");
    let nodbar_path = dir.join("nodbar.json");
    std::fs::write(&nodbar_path, nodbar.canonical_json()).unwrap();
    let out = bin()
        .args(["glue", "--m1"])
        .arg(&nodbar_path)
        .arg("--m2")
        .arg(&path)
        .args(["--probe", "t*d", "--out"])
        .arg(dir.join("never.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn glue_side_without_surface_sectors_reports_all_zero() {
    let dir = workdir();
    let path = fixture_path(&dir);
    let mut trivial = ManifoldFile::k3_two_blowups();
    trivial.basic_classes = vec![
        donaldson::manifest::BasicClassEntry {
            vector: vec![0, 1, -1, 0],
            coeff: "1/4".into(),
        },
        donaldson::manifest::BasicClassEntry {
            vector: vec![0, -1, 1, 0],
            coeff: "-1/4".into(),
        },
    ];
    let tpath = dir.join("trivial-sectors.json");
    std::fs::write(&tpath, trivial.canonical_json()).unwrap();
    let report = dir.join("zero-report.json");
    let out = bin()
        .args(["glue", "--m1"])
        .arg(&tpath)
        .arg("--m2")
        .arg(&path)
        .args(["--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(doc["rules"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["sum"] == "0"));
}

#[test]
fn verify_all_sections_pass() {
    let out = bin().args(["verify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for section in ["ring", "matrices", "cap", "gluing", "witten"] {
        assert!(
            text.contains(&format!("PASS {section}.")),
            "missing section {section} in:\n{text}"
        );
    }
    assert!(!text.contains("FAIL"));
    // section filter runs only the requested checks
    let out = bin().args(["verify", "--section", "ring"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS ring."));
    assert!(!text.contains("PASS cap."));
    // unknown section name is a parse error
    let out = bin().args(["verify", "--section", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_detects_an_injected_wrong_point_class() {
    for hook in ["scaled-quadratic", "opposite-sign"] {
        let out = bin()
            .args(["verify", "--section", "cap"])
            .env("DONALDSON_TEST_MU_X", hook)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(1), "hook {hook}");
        assert!(stdout(&out).contains("FAIL cap.point-insertion"));
    }
}

#[test]
fn manifold_files_reserialize_canonically() {
    let dir = workdir();
    let path = fixture_path(&dir);
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = ManifoldFile::from_json_str(&text).unwrap();
    assert_eq!(parsed.canonical_json(), text);
}
