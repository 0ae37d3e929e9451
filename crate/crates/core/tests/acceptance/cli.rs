//! End-to-end runs of the `weakdeg` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn weakdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakdeg"))
        .args(args)
        .env_remove("IMMUNITY_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn not_mod_family_degree() {
    let o = weakdeg(&[
        "immunity", "--family", "notmod", "--n", "6", "--q", "3", "--p", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["checked"], true);
}

#[test]
fn mod_family_cross_check_agrees() {
    let o = weakdeg(&[
        "immunity",
        "--family",
        "mod",
        "--n",
        "6",
        "--q",
        "3",
        "--p",
        "2",
        "--cross-check",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["cross_check"]["degree"], 3);
    assert_eq!(v["cross_check"]["method"], "symmetric");
    assert_eq!(v["cross_check"]["agree"], true);
}

#[test]
fn and2_table_witness() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "2 2\n0001").unwrap();
    let path = file.path().to_str().unwrap();
    let o = weakdeg(&["immunity", "--table", path, "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("degree: 2"), "{text}");
    assert!(text.contains("witness: x1x2\n"), "{text}");
    let v = json(&weakdeg(&["immunity", "--table", path, "--format", "json"]));
    assert_eq!(v["witness"], serde_json::json!([{"mask": 3, "coeff": 1}]));
}

#[test]
fn sym_source_runs_symmetric_path() {
    let o = weakdeg(&[
        "immunity",
        "--sym",
        "1,0,0,1,0,0,1",
        "--p",
        "2",
        "--cross-check",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["method"], "symmetric");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["cross_check"]["method"], "general");
}

#[test]
fn large_symmetric_degree_only() {
    let o = weakdeg(&[
        "immunity", "--family", "notmod", "--n", "300", "--q", "7", "--p", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["degree"], 43);
    assert_eq!(v["witness"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["immunity", "--family", "mod", "--n", "6"],
        vec![
            "immunity", "--family", "mod", "--n", "6", "--q", "3", "--p", "4",
        ],
        vec!["immunity", "--sym", "1,x,0"],
        vec!["immunity", "--table", "/nonexistent/file.tt"],
        vec!["residue", "--n", "6", "--q", "5"],
        vec!["matrix", "--entries", "1,2;3", "--p", "5"],
        vec!["frobnicate"],
    ] {
        assert_eq!(weakdeg(&args).status.code(), Some(2), "{args:?}");
    }
    let non_symmetric = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(non_symmetric.path(), "2 2\n0100\n").unwrap();
    let path = non_symmetric.path().to_str().unwrap();
    assert_eq!(
        weakdeg(&["immunity", "--table", path]).status.code(),
        Some(0)
    );
    assert_eq!(
        weakdeg(&["immunity", "--table", path, "--cross-check"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn help_exits_0() {
    let o = weakdeg(&["verify", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("--max-n") && text.contains("IMMUNITY_JOBS"),
        "{text}"
    );
    assert!(!text.contains("inject-fault"));
}

#[test]
fn hilbert_table_rows() {
    let o = weakdeg(&[
        "hilbert", "--family", "mod", "--n", "6", "--q", "3", "--p", "2", "--max-m", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "m\th_m\tC(n,<=m)\t2h_m-|S|\n0\t1\t1\t-40\n1\t7\t7\t-28\n2\t22\t22\t2\n"
    );
}

#[test]
fn residue_exit_codes() {
    let o = weakdeg(&["residue", "--n", "4", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(
        (v["bound_d"].as_u64(), v["measured_immunity"].as_u64()),
        (Some(1), Some(2))
    );
    assert_eq!(v["basis"], "poly");
    let o = weakdeg(&["residue", "--n", "6", "--q", "9", "--basis", "random:3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["pass"], false);
}

#[test]
fn matrix_pascal_powers() {
    let v = json(&weakdeg(&[
        "matrix", "--pascal", "3", "--power", "2", "--format", "json",
    ]));
    assert_eq!(v["rows"], 9);
    assert_eq!(v["rank"], 9);
    assert_eq!(v["strong_nondegenerate"], false);
    assert_eq!(v["weak_nondegenerate"], true);
    let v = json(&weakdeg(&[
        "matrix",
        "--entries",
        "1,1;1,0",
        "--p",
        "2",
        "--format",
        "json",
    ]));
    assert_eq!(v["strong_nondegenerate"], true);
}

#[test]
fn verify_smoke_is_fast_and_passes() {
    let _guard = crate::serial();
    let start = std::time::Instant::now();
    let o = weakdeg(&["verify", "--max-n", "4"]);
    let elapsed = start.elapsed();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(elapsed.as_secs_f64() < 5.0, "smoke verify took {elapsed:?}");
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("criterion")).count(),
        10
    );
    assert!(text.ends_with("all theorem checks passed\n"));
}

#[test]
fn verify_fault_injection_names_theorem() {
    let o = weakdeg(&["verify", "--max-n", "4", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(
        text.contains(
            "FAILED: criterion 1 (immunity of not chi_q equals ceil(n/q)) at (n=2, q=2, p=3)"
        ),
        "{text}"
    );
}

#[test]
fn output_is_deterministic_across_jobs() {
    let base = weakdeg(&["verify", "--max-n", "4", "--format", "json"]);
    let again = weakdeg(&["verify", "--max-n", "4", "--format", "json"]);
    let parallel = Command::new(env!("CARGO_BIN_EXE_weakdeg"))
        .args(["verify", "--max-n", "4", "--format", "json"])
        .env("IMMUNITY_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(base.stdout, again.stdout);
    assert_eq!(base.stdout, parallel.stdout);
    let a = weakdeg(&[
        "immunity", "--family", "mod", "--n", "8", "--q", "3", "--p", "5", "--format", "tsv",
    ]);
    let b = weakdeg(&[
        "immunity", "--family", "mod", "--n", "8", "--q", "3", "--p", "5", "--format", "tsv",
    ]);
    assert_eq!(a.stdout, b.stdout);
}
