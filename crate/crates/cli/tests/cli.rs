//! End-to-end tests of the binary: build/round-trip, analyze reports,
//! simulation reproducibility, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use conic_ldpc::{build_structure, field_new, ConicFamily};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conic-ldpc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("conic-ldpc-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn build_round_trips_through_alist() {
    let out = tmp_path("c24.alist");
    let result = run(&["build", "--family", "2", "--q", "4", "--out", out.to_str().unwrap()]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));

    let text = std::fs::read_to_string(&out).unwrap();
    let first_line = text.lines().next().unwrap();
    assert_eq!(first_line, "48 64");

    // identical to the in-memory matrix, bit for bit
    let spec = field_new(4).unwrap();
    let expected = build_structure(ConicFamily::Hyperbolic, &spec).incidence_matrix();
    let parsed = conic_ldpc_cli::alist::read_alist(&text).unwrap();
    assert_eq!(parsed, expected);

    // manifest sidecar
    let manifest_path = tmp_path("c24.alist.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["family"], 2);
    assert_eq!(manifest["q"], 4);
    assert_eq!(manifest["n"], 48);
    assert_eq!(manifest["n_checks"], 64);
    assert_eq!(manifest["row_weight"], 3);
    assert_eq!(manifest["col_weight"], 4);
    assert!(manifest["build_hash"].as_str().unwrap().len() == 16);

    std::fs::remove_file(&out).ok();
    std::fs::remove_file(&manifest_path).ok();
}

#[test]
fn build_elliptic_order_eight() {
    let out = tmp_path("c38.alist");
    let result = run(&["build", "--family", "3", "--q", "8", "--out", out.to_str().unwrap()]);
    assert!(result.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("576 512"));
    std::fs::remove_file(&out).ok();
    std::fs::remove_file(tmp_path("c38.alist.manifest.json")).ok();
}

#[test]
fn build_rejects_non_prime_power_orders() {
    let out = tmp_path("never-written.alist");
    let result = run(&["build", "--family", "1", "--q", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("prime power"), "{stderr}");
    assert!(!out.exists());
}

#[test]
fn build_json_format_lists_sparse_rows() {
    let out = tmp_path("c24.json");
    let result = run(&[
        "build", "--family", "2", "--q", "4", "--format", "json", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(value["n"], 48);
    assert_eq!(value["n_checks"], 64);
    assert_eq!(value["rows"].as_array().unwrap().len(), 64);
    assert_eq!(value["rows"][0].as_array().unwrap().len(), 3);
    std::fs::remove_file(&out).ok();
    std::fs::remove_file(tmp_path("c24.json.manifest.json")).ok();
}

#[test]
fn analyze_reports_girth_and_dimension() {
    let result = run(&["analyze", "--family", "1", "--q", "5", "--checks", "girth,rank"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&result.stdout)).unwrap();
    assert_eq!(report["length"], 125);
    assert_eq!(report["all_match"], true);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks[0]["check"], "girth");
    assert_eq!(checks[0]["computed"], 8);
    assert_eq!(checks[1]["check"], "rank");
    assert_eq!(checks[1]["computed"]["dimension"], 44);
    assert_eq!(checks[1]["matches"], true);
}

#[test]
fn analyze_counts_and_cycles() {
    let result =
        run(&["analyze", "--family", "1", "--q", "4", "--checks", "counts,cycles6"]);
    assert!(result.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&result.stdout)).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks[0]["computed"]["conics"], 48);
    assert_eq!(checks[1]["computed"], 192);
    assert_eq!(checks[1]["matches"], true);
}

#[test]
fn analyze_guards_infeasible_checks_without_aborting_others() {
    let result = run(&[
        "analyze", "--family", "2", "--q", "11", "--checks", "cycles8,girth",
    ]);
    // a guarded check reports an error entry; the girth check still runs,
    // and the report is flagged as not all matching
    assert_eq!(result.status.code(), Some(3));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&result.stdout)).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks[0]["error"].as_str().unwrap().contains("q <= 9"));
    assert_eq!(checks[1]["check"], "girth");
    assert_eq!(checks[1]["matches"], true);
    assert_eq!(report["all_match"], false);
}

#[test]
fn analyze_reports_are_deterministic() {
    let args = [
        "analyze", "--family", "3", "--q", "4", "--checks", "counts,girth,kappa,rank",
        "--seed", "5",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn analyze_exhaustive_distance_of_small_code() {
    let result = run(&[
        "analyze", "--family", "2", "--q", "4", "--checks", "mindist-exhaustive",
    ]);
    assert!(result.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&result.stdout)).unwrap();
    assert_eq!(report["checks"][0]["computed"], 8);
    assert_eq!(report["checks"][0]["matches"], true);
}

#[test]
fn simulate_is_reproducible_and_writes_csv() {
    let args = [
        "simulate", "--family", "1", "--q", "4", "--snr", "8:1:8", "--seed", "7",
        "--min-trials", "300", "--max-trials", "300", "--max-iter", "10",
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let csv = String::from_utf8_lossy(&first.stdout);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "eb_n0_db,trials,bit_errors,frame_errors,ber,fer,avg_iters"
    );
    let data = lines.next().unwrap();
    assert!(data.starts_with("8,300,"), "{data}");
}

#[test]
fn simulate_reads_alist_files() {
    let out = tmp_path("c14.alist");
    assert!(run(&["build", "--family", "1", "--q", "4", "--out", out.to_str().unwrap()])
        .status
        .success());
    let result = run(&[
        "simulate", "--alist", out.to_str().unwrap(), "--snr", "6", "--seed", "3",
        "--min-trials", "200", "--max-trials", "200", "--max-iter", "5", "--format", "json",
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&result.stdout)).unwrap();
    assert_eq!(value["n"], 64);
    assert_eq!(value["k"], 23);
    assert_eq!(value["points"][0]["trials"], 200);
    std::fs::remove_file(&out).ok();
    std::fs::remove_file(tmp_path("c14.alist.manifest.json")).ok();
}

#[test]
fn simulate_gallager_baseline() {
    let result = run(&[
        "simulate", "--gallager", "n=48,row=6,col=3", "--snr", "7", "--seed", "11",
        "--min-trials", "200", "--max-trials", "200", "--max-iter", "5",
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("[48,"), "{stderr}");
}

#[test]
fn simulate_requires_exactly_one_source() {
    let result = run(&["simulate", "--snr", "4"]);
    assert_eq!(result.status.code(), Some(2));
    let result = run(&[
        "simulate", "--family", "1", "--q", "4", "--gallager", "n=48,row=6,col=3", "--snr", "4",
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let result = run(&["build", "--family", "9", "--q", "5", "--out", "/tmp/x.alist"]);
    assert_eq!(result.status.code(), Some(2));
    // clap's own usage handling also exits 2
    let result = run(&["frobnicate"]);
    assert_eq!(result.status.code(), Some(2));
}
