use std::process::{Command, Output};

use qbk_core::qsums::{Status, VerificationReport};

fn qbk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbk")).args(args).output().expect("binary runs")
}

fn qbk_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbk")).args(args).env("QBK_THREADS", threads).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theorem3_sum_prints_canonical_rendering() {
    let out = qbk(&["sum", "--theorem3", "--n", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1*q^(3/2)\n");
    let closed = qbk(&["sum", "--theorem3", "--closed", "--n", "2", "--k", "2"]);
    assert_eq!(stdout(&closed), "1*q^(3/2)\n");
}

#[test]
fn s_mn_sum_and_evaluation() {
    assert_eq!(stdout(&qbk(&["sum", "--m", "3", "--n", "2"])), "1 + 2*q^1 + 3*q^2 + 2*q^3 + 1*q^4\n");
    // at q = 1 this is 1^3 + 2^3
    assert_eq!(stdout(&qbk(&["sum", "--m", "3", "--n", "2", "--q", "1"])), "9\n");
    assert_eq!(qbk(&["sum", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn odd_orders_are_usage_errors() {
    for args in [
        &["beta", "--n", "3", "--k", "1"][..],
        &["beta-poly", "--n", "5", "--k", "2"],
        &["sum", "--theorem3", "--n", "3", "--k", "2"],
        &["limit", "--n", "3", "--k", "1"],
    ] {
        let out = qbk(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn beta_json_and_evaluation() {
    let out = qbk(&["beta-poly", "--n", "2", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["value"], "2*q^(3/2)");
    assert_eq!(v["method"], "closed_form");
    let oracle = qbk(&["beta-poly", "--n", "2", "--k", "2", "--oracle", "--format", "json"]);
    let w: serde_json::Value = serde_json::from_str(stdout(&oracle).trim()).unwrap();
    assert_eq!(w["value"], v["value"]);
    // 2 q^(3/2) at q = 4
    assert_eq!(stdout(&qbk(&["beta-poly", "--n", "2", "--k", "2", "--q", "4"])), "16\n");
    assert_eq!(qbk(&["beta-poly", "--n", "2", "--k", "2", "--q", "2"]).status.code(), Some(2));
}

#[test]
fn table_is_sorted_csv() {
    let out = qbk(&["table", "--n", "4,2", "--k", "2,1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,k,value\n2,1,0\n2,2,0\n4,1,0\n4,2,0\n");
    let poly = qbk(&["table", "--kind", "beta-poly", "--n", "2,4", "--k", "1,2", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(stdout(&poly).trim()).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3], serde_json::json!({"n": 4, "k": 2, "value": "4*q^(5/2)"}));
}

#[test]
fn table_rejects_odd_orders() {
    let out = qbk(&["table", "--n", "2,3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn out_flag_writes_file_and_reports_unwritable_paths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = qbk(&["table", "--n", "2", "--k", "1,2,3", "--kind", "theorem3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,k,value\n2,1,0\n2,2,1*q^(3/2)\n"));

    let missing = dir.path().join("no/such/dir/out.csv");
    let bad = qbk(&["table", "--format", "csv", "--out", missing.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!missing.exists());
}

#[test]
fn verify_json_lines_round_trip() {
    let out = qbk(&["verify", "--identity", "schlosser", "--m", "4", "--n-max", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let report: VerificationReport = serde_json::from_str(line).unwrap();
        assert_eq!(report.identity, "schlosser_m4");
        assert_eq!(report.status, Status::Equal);
        assert_eq!(serde_json::to_string(&report).unwrap(), line);
    }
}

#[test]
fn verify_output_is_independent_of_threads() {
    let args = ["verify", "--n-max", "5", "--k-max", "3", "--format", "json"];
    let seq = qbk_env(&args, "0");
    let par = qbk_env(&args, "3");
    assert_eq!(seq.status.code(), Some(0));
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn verify_text_and_csv_summaries() {
    let text = stdout(&qbk(&["verify", "--identity", "kim", "--n-max", "3"]));
    assert!(text.starts_with("kim_linear [1] equal\n"));
    assert!(text.ends_with("6/6 equal\n"));
    let csv = stdout(&qbk(&["verify", "--identity", "kim_linear", "--n-max", "2", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("identity,params,status,lhs,rhs"));
    assert_eq!(csv.lines().nth(2), Some("kim_linear,2,equal,1*q^1,1*q^1"));
}

#[test]
fn verify_rejects_unknown_identities_and_bad_m() {
    assert_eq!(qbk(&["verify", "--identity", "nope"]).status.code(), Some(2));
    assert_eq!(qbk(&["verify", "--identity", "schlosser", "--m", "7"]).status.code(), Some(2));
    assert_eq!(qbk(&["verify", "--identity", "schlosser_m2", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn fixture_replay_detects_corruption() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let good = qbk(&["verify", "--fixture", &format!("{dir}/tests/fixtures/theorem3_grid.jsonl"), "--format", "json"]);
    assert_eq!(good.status.code(), Some(0));
    let bad = qbk(&["verify", "--fixture", &format!("{dir}/tests/fixtures/theorem3_corrupted.jsonl"), "--format", "json"]);
    assert_eq!(bad.status.code(), Some(1));
    let flagged: Vec<VerificationReport> = stdout(&bad)
        .lines()
        .map(|l| serde_json::from_str::<VerificationReport>(l).unwrap())
        .filter(|r| r.status != Status::Equal)
        .collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0].params, vec![2, 3]);
    let missing = qbk(&["verify", "--fixture", "/nonexistent/fixture.jsonl"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn zeta_series_and_special_values() {
    let out = qbk(&["zeta", "--s", "3", "--q", "4", "--k", "1", "--tolerance", "1e-10", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    for field in ["variant", "s", "q", "k", "tolerance", "value", "terms_used"] {
        assert!(v.get(field).is_some(), "{field}");
    }
    assert_eq!(v["value"], "1950785418432269393/1942473561735168000");
    assert_eq!(stdout(&qbk(&["zeta", "--special", "--n", "4", "--k", "2"])), "0\n");
    // divergent and non-convergent parameter choices
    assert_eq!(qbk(&["zeta", "--s", "2", "--q", "4", "--variant", "plain"]).status.code(), Some(2));
    assert_eq!(qbk(&["zeta", "--s", "3", "--q", "1/2"]).status.code(), Some(2));
    assert_eq!(qbk(&["zeta", "--s", "3", "--q", "4", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn limits_match_power_sums() {
    // 1^4 + 2^4 + 3^4 + 4^4
    assert_eq!(stdout(&qbk(&["limit", "--kind", "theorem3", "--n", "4", "--k", "5"])), "354\n");
    let v: serde_json::Value =
        serde_json::from_str(stdout(&qbk(&["limit", "--kind", "beta-poly", "--n", "2", "--k", "3", "--format", "json"])).trim())
            .unwrap();
    // 2 (1^2 + 2^2)
    assert_eq!(v["limit"], "10");
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(qbk(&["--help"]).status.code(), Some(0));
    assert_eq!(qbk(&["--version"]).status.code(), Some(0));
    assert_eq!(qbk(&[]).status.code(), Some(2));
}
