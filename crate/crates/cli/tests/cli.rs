use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn grouplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouplab"))
        .args(args)
        .env_remove("GROUPLAB_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn catalog_arg() -> String {
    root().join("catalog").display().to_string()
}

#[test]
fn check_frobenius_on_c12_passes() {
    let o = grouplab(&["check", "frobenius", "C12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary\tpass 6\tfail 0"));
    let o = grouplab(&["check", "frobenius", "C12", "--format", "csv"]);
    assert_eq!(stdout(&o), fixture("check_frobenius_c12.csv"));
}

#[test]
fn q8_to_c4xc2_is_infeasible_with_violator_four() {
    let o = grouplab(&["bijection", "Q8", "C4xC2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), fixture("bijection_q8_c4xc2.txt"));
    let o = grouplab(&["bijection", "Q8", "C4xC2", "--expect", "infeasible"]);
    assert_eq!(o.status.code(), Some(0));
    let o = grouplab(&["bijection", "Q8", "C4xC2", "--expect", "feasible"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn explicit_map_is_a_permutation_into_divisors() {
    let o = grouplab(&["bijection", "S3", "C6", "--explicit", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let map: Vec<usize> = serde_json::from_value(v["map"].clone()).unwrap();
    let mut sorted = map.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..6).collect::<Vec<_>>());
}

#[test]
fn rank_eight_prints_three_tiers() {
    let o = grouplab(&["rank", "8", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fixture("rank_8.txt"));
}

#[test]
fn rank_reads_shipped_catalog() {
    let cat = catalog_arg();
    let o = grouplab(&["--catalog", &cat, "rank", "24", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fixture("rank_24.csv"));
}

#[test]
fn rank_refuses_orders_without_a_complete_catalog() {
    let o = grouplab(&["rank", "48"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not declared complete"));
}

#[test]
fn make_writes_cayley_text() {
    let o = grouplab(&["make", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fixture("make_s3.cay"));
}

#[test]
fn made_table_reads_back_as_file_literal() {
    let path = std::env::temp_dir().join(format!("grouplab-cli-{}.cay", std::process::id()));
    let p = path.display().to_string();
    assert_eq!(grouplab(&["make", "Dic3", "-o", &p]).status.code(), Some(0));
    let lit = format!("file:{p}");
    let a = grouplab(&["info", &lit]);
    let b = grouplab(&["info", "Dic3"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(a.status.code(), Some(0));
    let tail = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(tail(&a), tail(&b));
}

#[test]
fn refined_target_for_sl23() {
    let o = grouplab(&["cl-target", "SL(2,3)", "--refined"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fixture("cl_target_sl23_refined.txt"));
    let o = grouplab(&["cl-target", "SL(2,3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violator\t3 4 6"));
}

#[test]
fn catalog_labels_resolve_as_groups() {
    let cat = catalog_arg();
    let o = grouplab(&["--catalog", &cat, "info", "(C2xC2):C9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("psi\t265"));
}

#[test]
fn verify_exit_codes_follow_failures() {
    let cat = catalog_arg();
    let o = grouplab(&["--catalog", &cat, "verify", "main5", "36"]);
    assert_eq!(o.status.code(), Some(1));
    let o = grouplab(&["--catalog", &cat, "verify", "main5", "36", "--tier", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = grouplab(&["verify", "recursion", "upto:16"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("flagged\tC2\tclosed-form-as-written"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        grouplab(&["info", "Q8", "--format", "csv"]).status.code(),
        Some(2)
    );
    assert_eq!(grouplab(&["info", "V4"]).status.code(), Some(2));
    assert_eq!(grouplab(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn sol_counts_involutions_of_s4() {
    let o = grouplab(&["sol", "S4", "-d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("count\t10\n"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let cat = catalog_arg();
    for args in [
        vec!["--catalog", cat.as_str(), "rank", "36", "--format", "json"],
        vec!["verify", "bounds", "upto:12", "--format", "csv"],
        vec!["check", "t22va", "upto:16", "--format", "json"],
    ] {
        let a = grouplab(&args);
        let b = grouplab(&args);
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
