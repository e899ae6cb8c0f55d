//! End-to-end tests of the command-line interface: flag handling,
//! environment-variable fallbacks, file loading, exit codes, and output
//! stability.

use std::path::PathBuf;
use std::process::{Command, Output};

fn confcoh() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_confcoh"));
    // Isolate from any ambient configuration.
    for (key, _) in std::env::vars() {
        if key.starts_with("CONFCOH_") {
            cmd.env_remove(key);
        }
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    confcoh().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_temp(name: &str, contents: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join(name);
    std::fs::write(&path, contents).expect("write file");
    (dir, path)
}

const SV_FILE: &str = "\
# The three-generator algebra written out as a description file.
algebra sv-from-file
generators L Y M
virasoro L
bracket L L = (D + 2*x) L
bracket L Y = (D + 3/2*x) Y
bracket Y L = (1/2*D + 3/2*x) Y
bracket Y Y = (D + 2*x) M
bracket L M = (D + x) M
bracket M L = (x) M
";

/// Same table with one bracket pair mutated to `(D + 2*x) M`.  The pair is
/// still skew-consistent, so only the Jacobi identity can catch it.
const SV_BROKEN_JACOBI: &str = "\
algebra sv-broken
generators L Y M
virasoro L
bracket L L = (D + 2*x) L
bracket L Y = (D + 3/2*x) Y
bracket Y L = (1/2*D + 3/2*x) Y
bracket Y Y = (D + 2*x) M
bracket L M = (D + 2*x) M
bracket M L = (D + 2*x) M
";

/// Same table with the reverse `Y L` bracket missing its `D` term, which
/// breaks conformal skew-symmetry.
const SV_BROKEN_SKEW: &str = "\
algebra sv-skew
generators L Y M
virasoro L
bracket L L = (D + 2*x) L
bracket L Y = (D + 3/2*x) Y
bracket Y L = (3/2*x) Y
bracket Y Y = (D + 2*x) M
bracket L M = (D + x) M
bracket M L = (x) M
";

#[test]
fn axioms_pass_for_every_builtin() {
    for name in ["vir", "hv", "sv"] {
        let out = run(&["axioms", "--algebra", name]);
        assert!(out.status.success(), "axioms failed for {name}");
        let text = stdout_of(&out);
        assert!(text.contains("axioms: PASS"), "unexpected output: {text}");
    }
}

#[test]
fn axioms_pinpoint_a_broken_jacobi_identity() {
    let (_dir, path) = write_temp("broken.lca", SV_BROKEN_JACOBI);
    let out = run(&["axioms", "--algebra", path.to_str().unwrap(), "--skip-axioms"]);
    assert!(
        !out.status.success(),
        "mutated table must fail the axiom check"
    );
    let text = stdout_of(&out);
    assert!(text.contains("jacobi"), "missing jacobi report: {text}");
    assert!(
        text.contains("(L, Y, Y)"),
        "failure not pinpointed to (L, Y, Y): {text}"
    );
    assert!(text.contains("axioms: FAIL"), "missing verdict: {text}");
}

#[test]
fn axioms_pinpoint_a_broken_skew_pair() {
    let (_dir, path) = write_temp("skew.lca", SV_BROKEN_SKEW);
    let out = run(&["axioms", "--algebra", path.to_str().unwrap(), "--skip-axioms"]);
    assert!(!out.status.success());
    let text = stdout_of(&out);
    assert!(
        text.contains("skew-symmetry"),
        "missing skew-symmetry report: {text}"
    );
}

#[test]
fn loading_a_mutated_file_without_skip_is_an_error() {
    let (_dir, path) = write_temp("broken.lca", SV_BROKEN_JACOBI);
    let out = run(&["table", "--algebra", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = stderr_of(&out);
    assert!(err.contains("error:"), "missing error banner: {err}");
}

#[test]
fn algebra_files_round_trip_through_the_loader() {
    let (_dir, path) = write_temp("sv.lca", SV_FILE);
    let from_file = run(&[
        "cohomology",
        "--algebra",
        path.to_str().unwrap(),
        "--qmax",
        "4",
        "--format",
        "json",
    ]);
    assert!(from_file.status.success(), "{}", stderr_of(&from_file));
    let builtin = run(&[
        "cohomology", "--algebra", "sv", "--qmax", "4", "--format", "json",
    ]);
    assert!(builtin.status.success());
    let a: serde_json::Value = serde_json::from_str(&stdout_of(&from_file)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout_of(&builtin)).unwrap();
    assert_eq!(a["dims_basic"], b["dims_basic"]);
    assert_eq!(a["dims_reduced"], b["dims_reduced"]);
    assert_eq!(a["algebra"], "sv-from-file");
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "cohomology", "--algebra", "sv", "--qmax", "4", "--format", "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "JSON output is not stable");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(report["dims_basic"]["3"], 1);
    assert_eq!(report["dims_reduced"]["2"], 1);
}

#[test]
fn environment_variables_mirror_the_flags() {
    let out = confcoh()
        .arg("cohomology")
        .env("CONFCOH_ALGEBRA", "sv")
        .env("CONFCOH_QMAX", "3")
        .env("CONFCOH_FORMAT", "json")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", stderr_of(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["algebra"], "sv");
    assert_eq!(report["dims_basic"]["3"], 1);
    assert!(report["dims_basic"].get("4").is_none(), "qmax not honored");
}

#[test]
fn rank_one_beta_zero_is_refused_without_the_override() {
    let out = run(&[
        "cohomology",
        "--algebra",
        "sv",
        "--coeff",
        "rank1:alpha=1,beta=0",
        "--qmax",
        "2",
    ]);
    assert!(!out.status.success(), "beta=0 must be refused by default");
    assert!(
        stderr_of(&out).contains("--force-oracle"),
        "refusal must point at the override: {}",
        stderr_of(&out)
    );

    let forced = run(&[
        "cohomology",
        "--algebra",
        "sv",
        "--coeff",
        "rank1:alpha=1,beta=0",
        "--qmax",
        "2",
        "--force-oracle",
        "--format",
        "json",
    ]);
    assert!(forced.status.success(), "{}", stderr_of(&forced));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&forced)).unwrap();
    let notes = report["notes"].as_array().unwrap();
    assert!(
        notes.iter().any(|n| n.as_str().unwrap().contains("truncat")),
        "truncation must be disclosed in the notes: {notes:?}"
    );
}

#[test]
fn table_lists_the_signature_grid() {
    let out = run(&["table", "--algebra", "sv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("q | (L,Y,M) | vandermonde degree | weight degree"));
    assert!(text.contains("5 | (3,2,0) | 4 | 4"));
    assert!(text.contains("20 rows"));
}

#[test]
fn representative_dump_prints_components() {
    let out = run(&[
        "representatives",
        "--algebra",
        "sv",
        "--qmax",
        "3",
        "--which",
        "basic",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("q=3 representative 1:"), "missing q=3: {text}");
    assert!(text.contains("(L,L,L):"), "missing component tuple: {text}");
}

#[test]
fn module_check_covers_both_families() {
    for coeff in ["trivial:a=0", "trivial:a=-2", "rank1:alpha=1,beta=1"] {
        let out = run(&["check-module", "--algebra", "sv", "--coeff", coeff]);
        assert!(out.status.success(), "module check failed for {coeff}");
        assert!(stdout_of(&out).contains("module axioms: PASS"));
    }
}

#[test]
fn verification_flag_reruns_the_emitted_classes() {
    let out = run(&[
        "cohomology", "--algebra", "sv", "--qmax", "4", "--verify",
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stderr_of(&out);
    assert!(
        text.contains("verification: PASS"),
        "missing verification verdict: {text}"
    );
}
