//! End-to-end runs of the command-line front end.

use std::path::Path;

use gaugedim::cli::{main_with_args, read_artifact};

fn run(dir: &Path, args: &[&str]) -> i32 {
    let mut full = vec!["gaugedim".to_string()];
    full.extend(args.iter().map(|a| a.replace("@", dir.to_str().unwrap())));
    main_with_args(full)
}

#[test]
fn construct_then_estimate_recovers_e0_dimension() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["construct", "--kind", "e0", "--depth", "6", "--out", "@/e0.json", "--table", "@/e0.csv"]), 0);
    let code = run(
        dir.path(),
        &[
            "dim-estimate", "--points", "@/e0.csv", "--gauge", "theta", "--kind", "upper", "--schedule", "geo:7,6",
            "--out", "@/dim.json", "--table", "@/dim.csv",
        ],
    );
    assert_eq!(code, 0);
    let report = read_artifact(dir.path().join("dim.json")).unwrap();
    let value = report.result["estimate"]["value"].as_f64().unwrap();
    assert!((value - 2f64.ln() / 7f64.ln()).abs() < 0.02, "{value}");
    assert_eq!(report.result["space"], "exact-line");
    let table = std::fs::read_to_string(dir.path().join("dim.csv")).unwrap();
    assert!(table.starts_with("delta,count_or_k,gauge_value_log2,candidate_s,trend\n"));
    assert!(table.lines().count() > 1);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let out = format!("--out=@/{out}.json");
        assert_eq!(run(dir.path(), &["construct", "--kind", "cantor7", "--depth", "5", "--seed", "42", &out]), 0);
    }
    let a = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    let b = std::fs::read_to_string(dir.path().join("b.json")).unwrap();
    assert_eq!(a.replace("a.json", ""), b.replace("b.json", ""));
    let report = read_artifact(dir.path().join("a.json")).unwrap();
    assert_eq!(report.schema, 1);
    assert_eq!(report.seed, 42);
    assert_eq!(report.result["bits_consumed"], 62);
}

#[test]
fn artifacts_reparse_to_the_same_document() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["algodim", "--point", "1/3", "--depth", "12", "--out", "@/a.json"]), 0);
    let text = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    let report = read_artifact(dir.path().join("a.json")).unwrap();
    let original: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), original);
}

#[test]
fn malformed_gauge_is_a_config_error_without_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(dir.path(), &["hyper-verify", "--net-kind", "interval01", "--gauge", "thet(", "--out", "@/rep.json"]);
    assert_eq!(code, 2);
    assert!(!dir.path().join("rep.json").exists());
}

#[test]
fn unknown_command_and_missing_out_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["bogus"]), 2);
    assert_eq!(run(dir.path(), &["oracle-suite"]), 2);
    assert_eq!(run(dir.path(), &["oracle-suite", "--gauge", "theta", "--out", "@/o.json"]), 2);
}

#[test]
fn unreadable_input_is_a_computation_error() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(dir.path(), &["dim-estimate", "--points", "@/missing.csv", "--out", "@/d.json"]);
    assert_eq!(code, 1);
    assert!(!dir.path().join("d.json").exists());
}

#[test]
fn toml_config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.toml"),
        "net-kind = \"e0\"\nschedule = \"geo:7,5\"\ntolerance = 0.05\n",
    )
    .unwrap();
    let code = run(
        dir.path(),
        &["hyper-verify", "--config", "@/run.toml", "--schedule", "geo:7,4", "--out", "@/h.json", "--table", "@/h.csv"],
    );
    assert_eq!(code, 0);
    let report = read_artifact(dir.path().join("h.json")).unwrap();
    assert_eq!(report.config.schedule.as_deref(), Some("geo:7,4"));
    assert_eq!(report.config.net_kind.as_deref(), Some("e0"));
    assert_eq!(report.config.tolerance, Some(0.05));
    let table = std::fs::read_to_string(dir.path().join("h.csv")).unwrap();
    assert!(table.starts_with("delta,n_cover,packing_2delta,log2_lower,log2_upper,exact\n"));
    assert_eq!(table.lines().count(), 5);
}

#[test]
fn bad_toml_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), "no-such-key = 1\n").unwrap();
    assert_eq!(run(dir.path(), &["oracle-suite", "--config", "@/run.toml", "--out", "@/o.json"]), 2);
}

#[test]
fn empty_diagnostics_give_a_header_only_table() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("pts.csv"), "0\n0.25\n0.5\n0.75\n1\n").unwrap();
    let code = run(
        dir.path(),
        &[
            "dim-estimate", "--points", "@/pts.csv", "--method", "loglog", "--schedule", "geo:2,6", "--out",
            "@/d.json", "--table", "@/d.csv",
        ],
    );
    assert_eq!(code, 0);
    let table = std::fs::read_to_string(dir.path().join("d.csv")).unwrap();
    assert_eq!(table, "delta,count_or_k,gauge_value_log2,candidate_s,trend\n");
}

#[test]
fn gauge_validation_flags_a_divergent_precision_family() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["gauge-validate", "--out", "@/g.json"]), 0);
    assert_eq!(run(dir.path(), &["gauge-validate", "--precision", "harmonic", "--out", "@/h.json"]), 1);
    let report = read_artifact(dir.path().join("h.json")).unwrap();
    assert_eq!(report.result["passed"], false);
}

#[test]
fn oracle_suite_small_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["oracle-suite", "--instances", "60", "--seed", "5", "--out", "@/o.json"]), 0);
    let report = read_artifact(dir.path().join("o.json")).unwrap();
    assert_eq!(report.result["mismatches"].as_array().unwrap().len(), 0);
}
