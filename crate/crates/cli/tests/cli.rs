use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn minic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minic"))
        .args(args)
        .output()
        .expect("spawn minic")
}

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .display()
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn run_passes_guest_output_and_status_through() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "seven.c",
        "#include <stdio.h>\nint main(void) { printf(\"hi\\n\"); return 7; }\n",
    );
    let out = minic(&["run", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(7));
    assert_eq!(out.stdout, b"hi\n");
}

#[test]
fn location_probe_prints_the_lifecycle() {
    let out = minic(&["run", &corpus("location_lifecycle.c")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "STATIC STATIC AUTOMATIC DYNAMIC INVALID\n"
    );
}

#[test]
fn json_diagnostic_is_one_document_on_stderr() {
    let out = minic(&["run", "--json", &corpus("dangling_log_pointer.c")]);
    assert_eq!(out.status.code(), Some(134));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is one JSON document");
    let kind = v["kind"].as_str().unwrap();
    assert!(kind == "UseAfterFree" || kind == "InvalidFree", "{kind}");
    assert_eq!(v["line"], 7);
    for key in ["file", "column", "message", "stack"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["stack"][0], "logError");
}

#[test]
fn guest_abort_and_runtime_abort_share_the_status_but_not_the_note() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.txt", "123\n");
    let out = minic(&[
        "run",
        "--stdin",
        input.to_str().unwrap(),
        &corpus("read_number_lurking_flaw.c"),
    ]);
    assert_eq!(out.status.code(), Some(134));
    assert!(String::from_utf8_lossy(&out.stderr).contains("abort()"));

    let long = write(dir.path(), "long.txt", "123456789012\n");
    let out = minic(&[
        "run",
        "--stdin",
        long.to_str().unwrap(),
        &corpus("read_number_overflow.c"),
    ]);
    assert_eq!(out.status.code(), Some(134));
    assert!(String::from_utf8_lossy(&out.stderr).contains("OutOfBounds"));
}

#[test]
fn front_end_and_io_errors_have_their_own_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.c", "");
    assert_eq!(
        minic(&["run", empty.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let bad = write(dir.path(), "bad.c", "int main(void) { return 0 }");
    assert_eq!(
        minic(&["run", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.c");
    let out = minic(&["run", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn step_limit_comes_from_flag_or_environment() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "spin.c",
        "int main(void) { int x = 0; while (1) x++; return 0; }",
    );
    let out = minic(&["run", "--json", "--max-steps", "1000", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(134));
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["kind"], "InternalLimit");

    let out = Command::new(env!("CARGO_BIN_EXE_minic"))
        .args(["run", p.to_str().unwrap()])
        .env("MINIC_MAX_STEPS", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(134));
}

#[test]
fn check_runs_the_corpus() {
    let out = minic(&["check", &corpus("")]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    let summary = text.lines().last().unwrap();
    let (passed, total) = summary.split_once('/').unwrap();
    assert_eq!(passed, total);
    assert!(total.parse::<usize>().unwrap() >= 19);
}

#[test]
fn check_reports_wrong_and_missing_expectations() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "ok.c", "int main(void) { return 0; }");
    write(dir.path(), "ok.expect", "outcome: exit 0\nstdout: \"\"\n");
    write(dir.path(), "wrong.c", "int main(void) { return 1; }");
    write(dir.path(), "wrong.expect", "outcome: exit 0\n");
    write(dir.path(), "lonely.c", "int main(void) { return 0; }");
    let out = minic(&["check", dir.path().to_str().unwrap()]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1));
    assert!(text.contains("PASS ok.c"));
    assert!(text.contains("FAIL wrong.c"));
    assert!(text.contains("FAIL lonely.c: missing expectation file"));
    assert!(text.ends_with("1/3\n"), "{text}");
}

#[test]
fn check_of_an_empty_directory_is_vacuous() {
    let dir = tempfile::tempdir().unwrap();
    let out = minic(&["check", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0/0\n");
}
