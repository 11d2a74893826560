use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn waring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_waring")).args(args).output().expect("binary runs")
}

fn write_matrix(dir: &TempDir, name: &str, n: usize, entries: &[(f64, f64)]) -> PathBuf {
    let entries: Vec<[f64; 2]> = entries.iter().map(|&(re, im)| [re, im]).collect();
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::json!({ "n": n, "entries": entries }).to_string()).unwrap();
    path
}

fn target3(dir: &TempDir) -> PathBuf {
    let e = [(1.0, 0.5), (2.0, 0.0), (0.0, -1.0), (-0.5, 0.0), (0.0, 0.0), (3.0, 1.0), (1.0, 1.0), (0.0, 2.0), (-1.0, -0.5)];
    write_matrix(dir, "a3.json", 3, &e)
}

fn decompose(dir: &TempDir, poly: &str, matrix: &Path, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.path().join(format!("cert-{}.json", extra.join("").replace('-', "")));
    let mut args = vec!["decompose", poly, matrix.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    (waring(&args), out)
}

fn verify(path: &Path) -> Output {
    waring(&["verify", path.to_str().unwrap()])
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn decompose_then_verify_each_mode() {
    let dir = TempDir::new().unwrap();
    let a = target3(&dir);
    for (poly, mode) in [("[X1,X2]", "four"), ("[X1,X2]", "two"), ("X1^2 + X2", "auto"), ("X1^2 + X1", "five")] {
        let (o, cert) = decompose(&dir, poly, &a, &["--mode", mode]);
        assert_eq!(o.status.code(), Some(0), "{poly} {mode}: {}", String::from_utf8_lossy(&o.stderr));
        let v = verify(&cert);
        assert_eq!(v.status.code(), Some(0), "{poly} {mode}: {}", stdout(&v));
        assert!(stdout(&v).starts_with("ok:"));
    }
}

fn tamper(path: &Path, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    edit(&mut doc);
    let out = path.with_extension("tampered.json");
    std::fs::write(&out, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    out
}

#[test]
fn tampered_tuple_fails_verification() {
    let dir = TempDir::new().unwrap();
    let (o, cert) = decompose(&dir, "[X1,X2]", &target3(&dir), &["--mode", "four"]);
    assert_eq!(o.status.code(), Some(0));
    let bad = tamper(&cert, |d| {
        let re = &mut d["tuples"][1][0]["entries"][0][0];
        *re = Value::from(re.as_f64().unwrap() + 1e-3);
    });
    let v = verify(&bad);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).starts_with("FAILED"), "{}", stdout(&v));
}

#[test]
fn injected_signs_fail_verification() {
    let dir = TempDir::new().unwrap();
    let (_, cert) = decompose(&dir, "[X1,X2]", &target3(&dir), &["--mode", "four"]);
    let bad = tamper(&cert, |d| {
        d["coefficients"] = serde_json::json!([[1.0, 0.0], [1.0, 0.0], [1.0, 0.0], [-1.0, 0.0]]);
    });
    let v = verify(&bad);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("sign discipline"), "{}", stdout(&v));
}

#[test]
fn loosened_tolerances_are_not_trusted() {
    let dir = TempDir::new().unwrap();
    let (_, cert) = decompose(&dir, "[X1,X2]", &target3(&dir), &["--mode", "four"]);
    let bad = tamper(&cert, |d| {
        d["tolerances"]["endTol"] = Value::from(1e6);
        d["target"]["entries"][0][0] = Value::from(100.0);
    });
    assert_eq!(verify(&bad).status.code(), Some(1));
}

#[test]
fn central_polynomial_exits_3() {
    let dir = TempDir::new().unwrap();
    let a = write_matrix(&dir, "a2.json", 2, &[(1.0, 0.0), (2.0, 0.0), (0.0, 1.0), (-1.0, 0.0)]);
    let (o, _) = decompose(&dir, "[X1,X2]^2", &a, &[]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn zero_target_with_x1_has_zero_residual() {
    let dir = TempDir::new().unwrap();
    let a = write_matrix(&dir, "z.json", 3, &[(0.0, 0.0); 9]);
    let (o, cert) = decompose(&dir, "X1", &a, &["--mode", "four"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(doc["residual"].as_f64(), Some(0.0));
    assert_eq!(verify(&cert).status.code(), Some(0));
}

#[test]
fn same_seed_gives_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let a = target3(&dir);
    let run = |seed: &str| {
        let o = waring(&["decompose", "X1^2 + X2", a.to_str().unwrap(), "--mode", "four", "--seed", seed]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run("7"), run("7"));
}

#[test]
fn unparsable_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let a = target3(&dir);
    assert_eq!(decompose(&dir, "[X1,", &a, &[]).0.status.code(), Some(2));
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"n\": 2, \"entries\": [[1, 0]]}").unwrap();
    assert_eq!(decompose(&dir, "[X1,X2]", &junk, &[]).0.status.code(), Some(2));
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(verify(&junk).status.code(), Some(2));
}

#[test]
fn exhausted_search_exits_4() {
    let dir = TempDir::new().unwrap();
    let id = write_matrix(&dir, "i.json", 3, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
    let (o, _) = decompose(&dir, "[X1,X2]", &id, &["--mode", "five", "--budget", "32"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn classify_and_search_image() {
    let o = waring(&["classify", "[X1,X2]^2", "--n", "3"]);
    assert_eq!(stdout(&o).trim(), "generic");
    let o = waring(&["search-image", "[X1,X2]", "--n", "4", "--goal", "multiplicity-half", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["matrix"]["n"], 4);
    assert_eq!(doc["args"].as_array().unwrap().len(), 2);
    assert_eq!(waring(&["search-image", "X1", "--n", "2", "--goal", "sideways"]).status.code(), Some(2));
}
