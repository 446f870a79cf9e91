mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use common::{cli_batch, manifest_dir};

#[test]
fn example_script_exits_zero() {
    let run = cli_batch(&manifest_dir().join("examples/scripts/01_statements.arb"), &[]);
    assert_eq!((run.status, run.stdout.as_str(), run.stderr.as_str()), (0, "4\n12\n", ""));
}

#[test]
fn evaluation_error_exits_one_and_stops() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("bad.arb");
    std::fs::write(&script, "1\n$undefined\n2\n").unwrap();
    let run = cli_batch(&script, &[]);
    assert_eq!(run.status, 1);
    assert_eq!(run.stdout, "1\n");
    assert!(run.stderr.contains("$undefined"));
}

#[test]
fn io_and_usage_errors_exit_two() {
    let run = cli_batch(std::path::Path::new("/no/such/script.arb"), &[]);
    assert_eq!(run.status, 2);
    let run = cli_batch(&manifest_dir().join("examples/scripts/01_statements.arb"), &["--precision", "0"]);
    assert_eq!(run.status, 2);
}

#[test]
fn empty_script_is_silent() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("empty.arb");
    std::fs::write(&script, "").unwrap();
    let run = cli_batch(&script, &[]);
    assert_eq!((run.status, run.stdout.as_str()), (0, ""));
}

#[test]
fn script_from_stdin_with_precision_flag() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_arbcalc"))
        .args(["--script", "-", "--precision", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"pi()\nprecision\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "3.141592653589793\nInternal precision is set to 2 (memory blocks)\nActual precision: 64 bits\nNumber of printed digits: 16\n"
    );
}

#[test]
fn batch_mode_exports_charts_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let run = cli_batch(
        &manifest_dir().join("examples/scripts/13_ztest.arb"),
        &["--output-dir", out_dir.to_str().unwrap()],
    );
    assert_eq!(run.status, 0, "{}", run.stderr);
    let mut files: Vec<String> = std::fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    files.sort();
    assert_eq!(files, ["chart_1.svg", "report_1.html", "report_2.html"]);
}

#[test]
fn console_mode_reads_lines_until_exit() {
    let dir = tempfile::tempdir().unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_arbcalc"))
        .arg("--no-color")
        .env("ARBCALC_HISTORY", dir.path().join("history"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2^( 3 + 1 ) / 4\n$myvar = 2^( 3 + 1 ) / 4\n1 +\n$MyVar * 3\nexit\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 3, "{stdout}");
    assert!(lines[0].ends_with('4'));
    assert!(lines[1].contains("syntax error"));
    assert!(lines[2].ends_with("12"));
}
