use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn toeplitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toeplitz")).args(args).output().expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture(name).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn fock_has_multiplicity_one() {
    let out = toeplitz(&["mult", &fx("fock.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn fock_and_two_focks_are_not_equivalent() {
    let out = toeplitz(&["equiv", "--mode", "bh-quasifree", &fx("fock.json"), &fx("fock2.json")]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["decision"], "not equivalent");
    assert_eq!(r["format_version"], 1);
}

#[test]
fn emitted_essential_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json").display().to_string();
    let out = toeplitz(&["equiv", "--mode", "bh-quasifree", &fx("cycle12.json"), &fx("cycles_1_2.json"), "--emit-witness", &w]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = toeplitz(&["verify", &fx("cycle12.json"), &fx("cycles_1_2.json"), &w, "--depth", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let r = &report(&out)["verification"];
    assert_eq!(r["passed"], true);
    assert_eq!(r["verified_depth"], 4);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn failing_witness_reports_a_counterexample() {
    let out = toeplitz(&["verify", &fx("fock2.json"), &fx("fock.json"), &fx("identity_witness.json")]);
    assert_eq!(out.status.code(), Some(2));
    let r = &report(&out)["verification"];
    assert_eq!(r["passed"], false);
    assert!(r["counterexample"].is_object());
}

#[test]
fn malformed_representations_are_input_errors() {
    let out = toeplitz(&["mult", &fx("bad_cycle.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let out = toeplitz(&["wold", &fx("bad_twist.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not unitary"));
}

#[test]
fn missing_files_and_bad_flags_are_input_errors() {
    assert_eq!(toeplitz(&["mult", "/nonexistent/rep.json"]).status.code(), Some(1));
    assert_eq!(toeplitz(&["equiv", "--mode", "sideways", &fx("fock.json"), &fx("fock.json")]).status.code(), Some(1));
    assert_eq!(toeplitz(&["ibn"]).status.code(), Some(1));
    assert_eq!(toeplitz(&["--help"]).status.code(), Some(0));
}

#[test]
fn timing_appears_only_on_request() {
    let plain = report(&toeplitz(&["wold", &fx("mixed.json")]));
    assert!(plain.get("timing_ms").is_none());
    let timed = report(&toeplitz(&["--timing", "wold", &fx("mixed.json")]));
    assert!(timed["timing_ms"].is_f64());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let runs = [
        vec!["wold".to_string(), fx("mixed_twisted.json")],
        vec!["equiv".into(), "--mode".into(), "scalar-free".into(), fx("fock_swapped.json"), fx("fock.json")],
        vec!["endo-equal".into(), fx("cycle1.json"), fx("cycle2.json")],
        vec!["algebra-eval".into(), fx("element.json"), fx("fock.json"), "--vector".into(), fx("vector.json")],
        vec!["module".into(), "to-unitary".into(), fx("module_swapped.json")],
    ];
    for args in &runs {
        let (a, b) = (toeplitz(&args.iter().map(String::as_str).collect::<Vec<_>>()), toeplitz(&args.iter().map(String::as_str).collect::<Vec<_>>()));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn ibn_answers_for_both_input_kinds() {
    let out = toeplitz(&["ibn", "--fd", &fx("fd_m2_m3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["ibn"], true);
    let out = toeplitz(&["ibn", "--k0", &fx("k0_cuntz3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["ibn"], false);
}

#[test]
fn endo_conjugacy_of_fock_multiples() {
    assert_eq!(toeplitz(&["endo-conjugate", &fx("fock_swapped.json"), &fx("fock.json")]).status.code(), Some(0));
    assert_eq!(toeplitz(&["endo-conjugate", &fx("fock.json"), &fx("fock2.json")]).status.code(), Some(2));
    let supplied = toeplitz(&["endo-conjugate", &fx("fock_swapped.json"), &fx("fock.json"), "--witness", &fx("swap_witness.json")]);
    assert_eq!(supplied.status.code(), Some(3));
}
