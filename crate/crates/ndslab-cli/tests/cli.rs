//! End-to-end tests of the `ndslab` binary: subcommands, exit codes, and
//! report files.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ndslab"))
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).unwrap();
}

#[test]
fn gallery_list_names_all_entries() {
    let out = bin().args(["gallery", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for id in [
        "g1-rotations-to-identity",
        "g2-rational-to-irrational-rotation",
        "g3-cantor-adding-machine",
        "g4-infinite-pl-family",
        "g5-tent-constant-slope",
    ] {
        assert!(text.contains(id), "missing {id} in: {text}");
    }
}

#[test]
fn gallery_run_single_entry() {
    let out = bin()
        .args(["gallery", "run", "g5-tent-constant-slope"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[pass]"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn gallery_run_with_params_and_bad_id() {
    let out = bin()
        .args([
            "gallery",
            "run",
            "g3-cantor-adding-machine",
            "--params",
            r#"{"word_length": 12, "n_max": 4, "k_max": 64, "words": 5, "seed": 1}"#,
        ])
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin().args(["gallery", "run", "g6-not-a-thing"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_valid_config_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let config = dir.path().join("config.json");
    write(
        &config,
        &format!(
            r#"{{
                "system": {{"space": "circle", "family": {{"name": "halving_rotations"}}}},
                "checks": [{{"op": "check_lstar"}}, {{"op": "check_ccstar", "eps": "1/8"}}],
                "truncation": {{"n_max": 8, "k_max": 64}},
                "output": {{"format": "jsonl", "path": {:?}}}
            }}"#,
            report
        ),
    );
    let out = bin().args(["run", config.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 2);
    // The (L*) trace carries the exact value 3/8 at n = 3.
    assert!(text.contains("[3,\"3/8\"]"));
}

#[test]
fn run_rejects_bad_configs_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    // eps = 0 must be rejected naming the offending field.
    write(
        &config,
        r#"{
            "system": {"space": "circle", "family": {"name": "halving_rotations"}},
            "checks": [{"op": "check_cc", "eps": "0"}],
            "output": {"format": "jsonl", "path": "/tmp/unused.jsonl"}
        }"#,
    );
    let out = bin().args(["run", config.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("checks[0].eps"), "{err}");

    // Unknown fields are rejected (strict schema).
    write(
        &config,
        r#"{
            "system": {"space": "circle", "family": {"name": "halving_rotations"}},
            "checks": [],
            "output": {"format": "jsonl", "path": "/tmp/unused.jsonl"},
            "extra": true
        }"#,
    );
    let out = bin().args(["run", config.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_check_list_is_a_successful_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("empty.jsonl");
    let config = dir.path().join("config.json");
    write(
        &config,
        &format!(
            r#"{{
                "system": {{"space": "interval", "family": {{"name": "bump_train"}}}},
                "checks": [],
                "output": {{"format": "jsonl", "path": {:?}}}
            }}"#,
            report
        ),
    );
    let out = bin().args(["run", config.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&report).unwrap(), "");
}

#[test]
fn emit_plot_data_kinds_and_missing_kind_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let config = dir.path().join("config.json");
    write(
        &config,
        &format!(
            r#"{{
                "system": {{"space": "circle", "family": {{"name": "halving_rotations"}}}},
                "checks": [{{"op": "check_lstar"}}],
                "truncation": {{"n_max": 8, "k_max": 32}},
                "output": {{"format": "jsonl", "path": {:?}}}
            }}"#,
            report
        ),
    );
    assert!(bin().args(["run", config.to_str().unwrap()]).output().unwrap().status.success());

    let out = bin()
        .args(["emit-plot-data", report.to_str().unwrap(), "--kind", "trace"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("check,op,n,value,value_decimal"));
    assert!(csv.contains("3,3/8,0.375"));

    // No DO record in the report: coverage extraction exits 1.
    let out = bin()
        .args(["emit-plot-data", report.to_str().unwrap(), "--kind", "coverage"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Unknown kind is a usage error.
    let out = bin()
        .args(["emit-plot-data", report.to_str().unwrap(), "--kind", "spiral"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_processes() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["a.jsonl", "b.jsonl"] {
        let report = dir.path().join(name);
        let config = dir.path().join(format!("{name}.json"));
        write(
            &config,
            &format!(
                r#"{{
                    "system": {{"space": "cantor", "family": {{"name": "odometer_truncations", "word_length": 16}}}},
                    "checks": [{{"op": "check_ccstar", "eps": "1/8"}}, {{"op": "check_lstar"}}],
                    "truncation": {{"n_max": 6, "k_max": 64}},
                    "output": {{"format": "jsonl", "path": {:?}}}
                }}"#,
                report
            ),
        );
        let out = bin().args(["run", config.to_str().unwrap()]).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(std::fs::read(&report).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}
