//! End-to-end checks of the installed binary: exit codes, stream
//! separation, and byte-stable output.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_srfds"))
}

fn dwbc_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/dwbc.csv")
}

fn separable_csv() -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    for k in 0..4 {
        writeln!(file, "1.{k},0.1,A").unwrap();
        writeln!(file, "0.1,1.{k},B").unwrap();
    }
    file.flush().unwrap();
    file
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().unwrap()
}

#[test]
fn successful_run_exits_zero_with_report_on_stdout() {
    let file = separable_csv();
    let out = run(&[
        "--data",
        file.path().to_str().unwrap(),
        "--format",
        "csv",
        "--method",
        "cr",
        "--train-per-class",
        "2",
        "--out",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("method,n,accuracy,seconds,flags\n"));
    assert!(stdout.contains("cr,2,100.00,"));
    // Diagnostics stay on stderr.
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("loaded"));
}

#[test]
fn config_problems_exit_one() {
    let file = separable_csv();
    let path = file.path().to_str().unwrap().to_string();
    for args in [
        vec!["--data", &path, "--format", "csv", "--lambda", "abc"],
        vec!["--data", &path, "--format", "idx"], // missing --labels
        vec!["--data", &path, "--format", "csv", "--unknown-flag"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?} -> {out:?}");
    }
}

#[test]
fn data_problems_exit_two() {
    let file = separable_csv();
    let path = file.path().to_str().unwrap().to_string();
    for args in [
        vec!["--data", "/definitely/not/here.csv", "--format", "csv"],
        // Train split larger than the class populations.
        vec!["--data", &path, "--format", "csv", "--train-per-class", "9"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?} -> {out:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let out = run(&["--help"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("--train-per-class"));
}

#[test]
fn suppressed_timing_is_byte_stable_across_thread_counts() {
    let dwbc = dwbc_path();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = run(&[
            "--data",
            dwbc.to_str().unwrap(),
            "--format",
            "csv",
            "--method",
            "srfds",
            "--lambda",
            "1e-5",
            "--train-per-class",
            "10,40",
            "--normalize",
            "--no-timing",
            "--out",
            "csv",
            "--parallel",
            threads,
        ]);
        assert_eq!(out.status.code(), Some(0), "{out:?}");
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn subset_timing_reports_to_stderr() {
    let file = separable_csv();
    let out = run(&[
        "--data",
        file.path().to_str().unwrap(),
        "--format",
        "csv",
        "--method",
        "cr",
        "--train-per-class",
        "2",
        "--time-subsets",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("subset-division projectors"));
    assert!(stderr.contains("single full projector"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(!stdout.contains("projector"));
}
