//! Runs the `extalg` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn extalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extalg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_file() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/m11.qa").to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn ext_dimension() {
    let o = extalg(&["ext", "--algebra", "builtin:m11", "--from", "M", "--to", "M", "--degree", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = extalg(&["ext", "--algebra", &data_file(), "--from", "M", "--to", "K", "--degree", "3"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn resolve_reports_period() {
    let o = extalg(&["resolve", "--algebra", &data_file(), "--simple", "N", "--degree", "9"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("period 4"), "{out}");
    assert!(out.lines().any(|l| l == "1: P_{KN}"), "{out}");
}

#[test]
fn hilbert_counts() {
    let o = extalg(&["hilbert", "--algebra", "builtin:m11", "--source", "M", "--degree", "5"]);
    assert_eq!(stdout(&o).trim(), "1 2 3 4 5 6");
}

#[test]
fn groebner_check_passes() {
    let o = extalg(&["groebner", "--algebra", &data_file()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failing"));
}

#[test]
fn present_names_generators() {
    let o = extalg(&["present", "--algebra", "builtin:m11", "--max-degree", "5", "--order", "alpha < beta < gamma < delta < epsilon < phi < kappa < nu"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("kappa in Ext^4(K,K)"), "{out}");
    assert!(out.contains("phi^2 = 0"), "{out}");
}

#[test]
fn verify_m11_writes_identical_reports() {
    let (a, b) = (scratch("verify-a.json"), scratch("verify-b.json"));
    for path in [&a, &b] {
        let o = extalg(&["verify-m11", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stdout(&o));
        assert!(stdout(&o).contains("0 failed, 2 flagged"));
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let text = String::from_utf8(ja).unwrap();
    assert!(text.contains("\"schema_version\": 1"));
    assert!(text.contains("\"status\": \"flag\""));
}

#[test]
fn parse_errors_exit_with_two() {
    let bad = scratch("bad.qa");
    std::fs::write(&bad, "field 2\nvertex K\narrow a: K -> K\norder short-major-rlex a\nrelaton a^2 = 0\n").unwrap();
    let o = extalg(&["ext", "--algebra", bad.to_str().unwrap(), "--from", "K", "--to", "K", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 5, column 1"), "{err}");
}

#[test]
fn unknown_vertex_is_an_error() {
    let o = extalg(&["ext", "--algebra", "builtin:m11", "--from", "Q", "--to", "K", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
