//! Golden reports for every subcommand. Regenerate with `UPDATE_GOLDEN=1`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn muntz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muntz"))
        .args(args)
        .env_remove("MUNTZ_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check(name: &str, args: &[&str]) {
    let out = muntz(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&expected),
        "output of {args:?} differs from {name}"
    );
}

#[test]
fn approx_sqrt() {
    check("approx_sqrt.json", &["approx", "sqrt", "--n", "50"]);
    check(
        "approx_sqrt.csv",
        &[
            "approx", "sqrt", "--n", "8", "--grid", "101", "--format", "csv",
        ],
    );
}

#[test]
fn approx_abs() {
    check(
        "approx_abs.json",
        &["approx", "abs", "--n", "20", "--a", "2"],
    );
}

#[test]
fn lattice_maxmin() {
    check(
        "lattice_maxmin.json",
        &[
            "lattice",
            "maxmin",
            "--f",
            r#"[{"c":1,"lambda":1}]"#,
            "--g",
            r#"[{"c":1,"lambda":0},{"c":-1,"lambda":1}]"#,
            "--n",
            "50",
        ],
    );
}

#[test]
fn dist_span() {
    check(
        "dist_span.json",
        &["dist", "span", "--q", "2", "--lambdas", "0,1"],
    );
    check(
        "dist_span_gram.table",
        &[
            "dist",
            "span",
            "--q",
            "2",
            "--lambdas",
            "0,1",
            "--method",
            "gram",
            "--format",
            "table",
        ],
    );
}

#[test]
fn dist_profile() {
    check(
        "dist_profile.csv",
        &[
            "dist",
            "profile",
            "--q",
            "2",
            "--sequence",
            "2*i+1",
            "--n-max",
            "20",
            "--format",
            "csv",
        ],
    );
}

#[test]
fn dist_gram_oracle() {
    check(
        "dist_gram_oracle.json",
        &["dist", "gram-oracle", "--q", "3", "--lambdas", "0,1,2"],
    );
}

#[test]
fn density_check() {
    check(
        "density_check.json",
        &["density", "check", "--sequence", "i^2", "--n-max", "64"],
    );
    check(
        "density_check_primes.table",
        &[
            "density",
            "check",
            "--sequence",
            "primes",
            "--format",
            "table",
        ],
    );
}

#[test]
fn density_table() {
    check(
        "density_table.csv",
        &[
            "density",
            "table",
            "--sequence",
            "i+1",
            "--start",
            "1",
            "--n-max",
            "10",
            "--format",
            "csv",
        ],
    );
}

#[test]
fn muntz_construct() {
    check(
        "muntz_construct.json",
        &["muntz", "construct", "--q", "1", "--lambdas", "2,4,6"],
    );
}

#[test]
fn muntz_report() {
    check(
        "muntz_report.csv",
        &[
            "muntz",
            "report",
            "--q",
            "1",
            "--sequence",
            "2*i",
            "--start",
            "1",
            "--n-max",
            "30",
            "--format",
            "csv",
        ],
    );
}

#[test]
fn primes_euler() {
    check(
        "primes_euler.json",
        &["primes", "euler", "--n", "3", "--exact"],
    );
    check(
        "primes_euler_table.csv",
        &["primes", "euler", "--n", "12", "--table", "--format", "csv"],
    );
}

#[test]
fn primes_span() {
    check(
        "primes_span.json",
        &["primes", "span", "--q", "6", "--n", "2"],
    );
}

#[test]
fn project() {
    check(
        "project.json",
        &[
            "project",
            "--target",
            r#"[{"c":1,"lambda":2}]"#,
            "--lambdas",
            "0,1",
        ],
    );
}

#[test]
fn rejected_input_exits_2_with_diagnostic() {
    let out = muntz(&["dist", "span", "--q", "1", "--lambdas", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
    assert!(out.stdout.is_empty());

    let out = muntz(&["muntz", "construct", "--q", "2", "--lambdas", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("λ_2 = q"));

    let out = muntz(&["approx", "sqrt", "--n", "4", "--unknown"]);
    assert_eq!(out.status.code(), Some(2));

    let out = muntz(&["primes", "euler", "--n", "5000", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificate_failure_exits_1_after_writing_the_report() {
    // With zero slack, f64 rounding puts p_100(t) one ulp above √t at some
    // grid points; the bound check must notice rather than hide it.
    let out = muntz(&[
        "approx", "sqrt", "--n", "100", "--grid", "20001", "--slack", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("certificate failure"));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_muntz"))
        .args([
            "dist",
            "span",
            "--q",
            "1",
            "--lambdas",
            "0",
            "--output",
            "d.json",
        ])
        .env("MUNTZ_OUTPUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(dir.path().join("d.json")).unwrap();
    assert!(written.contains("\"delta\": 2.8867513459481287e-1"));
}

#[test]
fn help_documents_defaults() {
    let out = muntz(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[default: 1001]") && text.contains("[default: json]"));
}
