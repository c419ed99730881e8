//! End-to-end CLI tests: exit-code contract, report determinism, and golden
//! files pinning the shipped checks' reports byte for byte.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn braidkit(args: &[&str], output: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_braidkit"));
    cmd.args(args);
    if let Some(p) = output {
        cmd.arg("--output").arg(p);
    }
    cmd.env_remove("BRAIDKIT_OUTPUT_DIR");
    cmd.output().expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn report_bytes(args: &[&str]) -> (Output, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = braidkit(args, Some(&path));
    let bytes = std::fs::read_to_string(&path).expect("report written");
    (out, bytes)
}

#[test]
fn list_shows_catalog() {
    let out = braidkit(&["list"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["ar_hopf", "br_sol1_abcd", "tqr_hopf", "adjoint_tqr", "transmute_host_ar"] {
        assert!(text.contains(name), "missing {name}");
    }
    let out = braidkit(&["list", "--kind", "coaction"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "adjoint_ar\nadjoint_tqr\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(braidkit(&["check"], None).status.code(), Some(2));
    assert_eq!(braidkit(&["check", "nonsense"], None).status.code(), Some(2));
    assert_eq!(
        braidkit(&["check", "ar_hopf", "--axioms", "nonsense"], None).status.code(),
        Some(2)
    );
    // braided-only axiom on a plain structure is a configuration error
    assert_eq!(
        braidkit(&["check", "ar_hopf", "--axioms", "yang-baxter"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        braidkit(&["check", "adjoint_ar", "--comodule-algebra"], None).status.code(),
        Some(2)
    );
}

#[test]
fn check_reports_match_golden_files() {
    for (args, file) in [
        (
            &["check", "ar_hopf", "--max-word-len", "2"][..],
            "check_ar_hopf.json",
        ),
        (
            &[
                "check",
                "adjoint_ar",
                "--comodule-algebra",
                "--coacted",
                "br_abcd",
                "--max-word-len",
                "2",
            ][..],
            "check_comodule_adjoint_ar.json",
        ),
        (
            &["check", "br_sol1_abcp", "--axioms", "yang-baxter", "--max-word-len", "2"][..],
            "check_br_sol1_abcp_yb.json",
        ),
        (
            // numeric smoke run at a rational point
            &[
                "check",
                "tqr_hopf",
                "--specialize",
                "q=3",
                "--specialize",
                "r=2",
                "--max-word-len",
                "2",
            ][..],
            "check_tqr_hopf_numeric.json",
        ),
    ] {
        let (out, bytes) = report_bytes(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {out:?}");
        assert_eq!(bytes, golden(file), "{args:?} drifted from {file}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = &["check", "ar_hopf", "--max-word-len", "2"][..];
    let (_, first) = report_bytes(args);
    let (_, second) = report_bytes(args);
    assert_eq!(first, second);
}

#[test]
fn failing_check_exits_one_with_witness() {
    let (out, bytes) = report_bytes(&[
        "check",
        "adjoint_ar",
        "--comodule-algebra",
        "--coacted",
        "ar",
        "--max-word-len",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(bytes.contains("\"status\": \"fails\""));
    assert!(bytes.contains("witness") || bytes.contains("a , d"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("witness"));
}

#[test]
fn comodule_specialization_flips_the_verdict() {
    let base = &[
        "check",
        "adjoint_tqr",
        "--comodule-algebra",
        "--coacted",
        "br_abcd",
        "--max-word-len",
        "2",
    ];
    let symbolic = braidkit(base, None);
    assert_eq!(symbolic.status.code(), Some(1));
    let mut at_rq = base.to_vec();
    at_rq.extend(["--specialize", "r=q"]);
    let ok = braidkit(&at_rq, None);
    assert_eq!(ok.status.code(), Some(0), "{ok:?}");
}

#[test]
fn solve_budget_exhaustion_exits_three() {
    let (out, bytes) = report_bytes(&["solve", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(bytes.contains("budget of 10 steps exhausted"));
    assert!(bytes.contains("\"status\": \"stuck\""));
}

#[test]
fn output_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_braidkit"))
        .args(["check", "ar_hopf", "--max-word-len", "1"])
        .env("BRAIDKIT_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("check_ar_hopf.json").is_file());
}

#[test]
fn documents_load_from_a_directory() {
    use braidkit::files::write_structure;
    use braidkit::structures::structure;
    let dir = tempfile::tempdir().unwrap();
    let sm = structure("br_sol2_abcd").unwrap();
    std::fs::write(dir.path().join("mine.alg"), write_structure(&sm)).unwrap();
    let out = braidkit(
        &[
            "check",
            "mine",
            "--dir",
            dir.path().to_str().unwrap(),
            "--axioms",
            "counit,antipode-left",
            "--max-word-len",
            "2",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}
