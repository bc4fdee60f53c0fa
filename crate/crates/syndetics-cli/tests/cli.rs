//! End-to-end checks of the binary: exit codes, file round trips, and
//! byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_syndetics"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) {
    std::fs::write(dir.join(name), content).unwrap();
}

#[test]
fn generate_classify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "spec.json",
        r#"{"variant": "EvenNu2", "horizon": 256}"#,
    );
    let out = run_in(dir.path(), &["generate", "--spec", "spec.json", "--out", "a.txt"]);
    assert!(out.status.success(), "{out:?}");

    // the written set file re-parses through the CLI's own reader
    let out = run_in(
        dir.path(),
        &["classify", "--set", "a.txt", "--syndetic", "2", "--thick", "4"],
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("syndetic N=2: HoldsOnWindow"));
    assert!(text.contains("thick L=4: FailsOnWindow"));
}

#[test]
fn exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    // unknown flag -> 2
    let out = run_in(dir.path(), &["--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // classify without any check flag -> 2
    write(dir.path(), "a.txt", "H=8 E=8\nmembers: 1 2\n");
    let out = run_in(dir.path(), &["classify", "--set", "a.txt"]);
    assert_eq!(out.status.code(), Some(2));
    // missing file -> 3
    let out = run_in(dir.path(), &["classify", "--set", "nope.txt", "--syndetic", "2"]);
    assert_eq!(out.status.code(), Some(3));
    // malformed set file -> 4
    write(dir.path(), "bad.txt", "H=8 E=8\nmembers: 9\n");
    let out = run_in(dir.path(), &["classify", "--set", "bad.txt", "--syndetic", "2"]);
    assert_eq!(out.status.code(), Some(4));
    // runtime error (window too small) -> 5
    let out = run_in(dir.path(), &["classify", "--set", "a.txt", "--syndetic", "99"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn punch_run_exports_csv_and_derived_set() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "spec.json",
        r#"{"variant": "EvenNu2", "horizon": 512}"#,
    );
    assert!(run_in(dir.path(), &["generate", "--spec", "spec.json", "--out", "a.txt"])
        .status
        .success());
    // the engine refuses sets without 0
    let out = run_in(
        dir.path(),
        &["punch", "run", "--set", "a.txt", "--steps", "128", "--trace", "t.csv"],
    );
    assert_eq!(out.status.code(), Some(5));

    // append 0 by editing the set file: runs format starts at 1
    let text = std::fs::read_to_string(dir.path().join("a.txt")).unwrap();
    let fixed = text.replace("runs: 1-1", "runs: 0-1");
    write(dir.path(), "a0.txt", &fixed);
    let out = run_in(
        dir.path(),
        &[
            "punch", "run", "--set", "a0.txt", "--steps", "128", "--trace", "t.csv",
            "--derived", "b.txt", "--ell", "2", "--lset", "l2.txt",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "n,nu2,nuA,wstart,wlen,alpha0");
    assert_eq!(csv.lines().count(), 129);
    // derived set and L-set re-parse and verify passes
    for f in ["b.txt", "l2.txt"] {
        let out = run_in(dir.path(), &["classify", "--set", f, "--gaps"]);
        assert!(out.status.success(), "{f} failed to re-parse");
    }
    let out = run_in(
        dir.path(),
        &["punch", "verify", "--set", "a0.txt", "--steps", "128", "--samples", "16"],
    );
    assert!(out.status.success(), "{out:?}");
    assert!(String::from_utf8(out.stdout).unwrap().contains("all passed"));
}

#[test]
fn partition_writes_disjoint_halves() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.txt", "H=32 E=32\nruns: 0-31\n");
    let out = run_in(
        dir.path(),
        &[
            "partition", "--mode", "thick", "--set", "a.txt", "--lmax", "8",
            "--out1", "h1.txt", "--out2", "h2.txt",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let h1 = std::fs::read_to_string(dir.path().join("h1.txt")).unwrap();
    let h2 = std::fs::read_to_string(dir.path().join("h2.txt")).unwrap();
    use std::str::FromStr;
    let s1 = syndetics::WindowSet::from_str(&h1).unwrap();
    let s2 = syndetics::WindowSet::from_str(&h2).unwrap();
    assert!(s1.intersection(&s2).is_empty_on_window());
    assert_eq!(s1.count() + s2.count(), 32);
}

#[test]
fn battery_emits_twenty_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["battery", "--horizon", "1024", "--outdir", "b"],
    );
    assert!(out.status.success(), "{out:?}");
    let count = std::fs::read_dir(dir.path().join("b")).unwrap().count();
    assert_eq!(count, 20);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "spec.json",
        r#"{"variant": {"FsSet": {"generators": [3, 5, 9]}}, "horizon": 64}"#,
    );
    assert!(run_in(dir.path(), &["generate", "--spec", "spec.json", "--out", "a.txt"])
        .status
        .success());
    let args = [
        "classify", "--set", "a.txt", "--gaps", "--syndetic", "9", "--piecewise", "2,3",
    ];
    let first = run_in(dir.path(), &args);
    let second = run_in(dir.path(), &args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    // and the set file itself is byte-stable under regeneration
    assert!(run_in(dir.path(), &["generate", "--spec", "spec.json", "--out", "a2.txt"])
        .status
        .success());
    let a = std::fs::read(dir.path().join("a.txt")).unwrap();
    let a2 = std::fs::read(dir.path().join("a2.txt")).unwrap();
    assert_eq!(a, a2);
}

#[test]
fn json_mirror_is_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.txt", "H=16 E=16\nmembers: 0 2 4 6 8 10 12 14\n");
    let out = run_in(
        dir.path(),
        &["--json", "classify", "--set", "a.txt", "--syndetic", "2"],
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["check"], "syndetic");
    assert_eq!(v[0]["holds"], true);
}

#[test]
fn family_lab_prints_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["family-lab", "--n", "3", "--check", "all"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dual involution"));
    assert!(text.lines().count() > 10);
}
