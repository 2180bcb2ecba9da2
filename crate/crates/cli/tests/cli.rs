//! End-to-end tests against the built binary.  Everything here goes
//! through argv/stdout/exit codes; nothing links the engine directly.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tempered"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Per-test scratch file; tests run concurrently, names must not clash.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("tempered-cli-tests");
    fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name)
}

#[test]
fn not_tempered_entries_print_the_literal_verdict() {
    let out = run(&["analyze", "catalog:sl_over_sp:C:m=2"]);
    assert_eq!(exit(&out), 0, "analysis succeeded, verdict is data");
    let text = stdout(&out);
    assert!(text.contains("NOT tempered"), "got: {text}");
    assert!(text.contains("p_exact: 4"), "got: {text}");
}

#[test]
fn json_reports_have_the_frozen_shape() {
    let out = run(&["analyze", "catalog:group_manifold:sl2R", "--json"]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(
        text.trim_start().starts_with("{\n  \"p_exact\""),
        "p_exact leads the report: {text}"
    );
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(doc["p_exact"], "2");
    assert_eq!(doc["tempered"], true);
    assert_eq!(doc["almost_lp_even"], 2);
    assert_eq!(doc["kernel_compact"], true);
}

#[test]
fn subtraction_failures_name_the_offending_weight() {
    let path = scratch("bad_subtraction.json");
    fs::write(
        &path,
        r#"{"dim_a":1,"label":"bad",
            "g_weights":{"dim_zero":0,"weights":[{"coeffs":["1"],"mult":1},{"coeffs":["-1"],"mult":1}]},
            "h_weights":{"dim_zero":0,"weights":[{"coeffs":["2"],"mult":1},{"coeffs":["-2"],"mult":1}]}}"#,
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(exit(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("(-2)") || err.contains("(2)"), "got: {err}");
}

#[test]
fn schema_errors_carry_json_pointers() {
    let path = scratch("bad_arity.json");
    fs::write(
        &path,
        r#"{"dim_a":1,"label":"x",
            "g_weights":{"dim_zero":0,"weights":[{"coeffs":["1","2"],"mult":1}]},
            "h_weights":{"dim_zero":0,"weights":[]}}"#,
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(exit(&out), 2);
    assert!(
        stderr(&out).contains("/g_weights/weights/0/coeffs"),
        "got: {}",
        stderr(&out)
    );
}

#[test]
fn stated_q_weights_are_cross_checked() {
    let path = scratch("bad_q.json");
    fs::write(
        &path,
        r#"{"dim_a":1,"label":"x",
            "g_weights":{"dim_zero":0,"weights":[{"coeffs":["1"],"mult":2},{"coeffs":["-1"],"mult":2}]},
            "h_weights":{"dim_zero":0,"weights":[{"coeffs":["1"],"mult":1},{"coeffs":["-1"],"mult":1}]},
            "q_weights":{"dim_zero":0,"weights":[{"coeffs":["1"],"mult":2},{"coeffs":["-1"],"mult":2}]}}"#,
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("/q_weights"), "got: {}", stderr(&out));
}

fn assert_all_rows_match(args: &[&str], expected_rows: Option<usize>) {
    let out = run(args);
    assert_eq!(exit(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("params,p_exact,tempered,expected,match"),
        "frozen CSV header"
    );
    let mut rows = 0;
    for line in lines {
        assert!(line.ends_with(",true"), "mismatched row: {line}");
        rows += 1;
    }
    if let Some(n) = expected_rows {
        assert_eq!(rows, n);
    } else {
        assert!(rows > 0);
    }
}

#[test]
fn sl_product_sweep_matches_the_closed_form() {
    // Partitions with at least two parts, n = 2..8: 58 rows.
    assert_all_rows_match(&["sweep", "sl_over_product:C", "n=2..8", "--csv"], Some(58));
}

#[test]
fn sp_and_so_sweeps_match_the_closed_forms() {
    assert_all_rows_match(&["sweep", "sp_over_product:C", "n=2..6", "--csv"], None);
    assert_all_rows_match(&["sweep", "so_over_product:C", "n=3..8", "--csv"], None);
}

#[test]
fn signature_block_sweep_matches_the_closed_form() {
    assert_all_rows_match(&["sweep", "so_pq_over_product", "p+q<=6", "--csv"], None);
}

#[test]
fn real_two_block_sweep_matches_the_closed_form() {
    assert_all_rows_match(&["sweep", "sl_over_product:R", "m+n<=8", "--csv"], None);
}

#[test]
fn always_and_never_tempered_families_sweep_clean() {
    assert_all_rows_match(&["sweep", "sl_over_sp:C", "--csv"], Some(4));
    assert_all_rows_match(&["sweep", "sl_over_so_pq:C", "--csv"], Some(7));
    assert_all_rows_match(&["sweep", "group_manifold", "--csv"], Some(4));
    assert_all_rows_match(&["sweep", "complexification", "--csv"], Some(4));
}

#[test]
fn sweep_json_agrees_with_csv() {
    let csv = run(&["sweep", "sl_over_sp:R", "--csv"]);
    let json = run(&["sweep", "sl_over_sp:R", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let rows = doc.as_array().unwrap();
    let csv_text = stdout(&csv);
    let csv_rows: Vec<&str> = csv_text.lines().skip(1).collect();
    assert_eq!(rows.len(), csv_rows.len());
    for (row, line) in rows.iter().zip(&csv_rows) {
        let rebuilt = format!(
            "{},{},{},{},{}",
            row["params"].as_str().unwrap(),
            row["p_exact"].as_str().unwrap(),
            row["tempered"],
            row["expected"],
            row["match"]
        );
        assert_eq!(&rebuilt, line);
    }
}

#[test]
fn volume_box_reports_the_exact_exponent() {
    let out = run(&["volume", "box", "--Y", "3"]);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).contains("exponent: 3"), "got: {}", stdout(&out));

    let out = run(&["volume", "box", "--Y", "0"]);
    assert!(stdout(&out).contains("exponent: 0"), "got: {}", stdout(&out));

    let out = run(&["volume", "box", "--Y", "-3/2", "--csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("y,exponent,vol_b"));
    assert!(text.contains("-3/2,3/2,"), "got: {text}");
}

#[test]
fn mc_runs_are_deterministic() {
    let args = [
        "volume", "mc", "--shape", "ball", "--n", "1000000", "--seed", "7", "--grid", "2",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit(&first), 0);
    assert_eq!(stdout(&first), stdout(&second), "same seed, same bytes");
    assert_ne!(
        stdout(&first),
        stdout(&run(&[
            "volume", "mc", "--shape", "ball", "--n", "1000000", "--seed", "8", "--grid", "2",
        ])),
        "the seed is live"
    );
}

#[test]
fn exported_pairs_round_trip_byte_identically() {
    for (name, target) in [
        ("roundtrip_slprod.json", "catalog:sl_over_product:C:4=2+2"),
        ("roundtrip_gm.json", "catalog:group_manifold:so32"),
        ("roundtrip_g2.json", "catalog:direct:so7c_over_g2"),
    ] {
        let first = run(&["export", target]);
        assert_eq!(exit(&first), 0, "{target}: {}", stderr(&first));
        let path = scratch(name);
        fs::write(&path, stdout(&first)).unwrap();
        let second = run(&["export", path.to_str().unwrap()]);
        assert_eq!(exit(&second), 0, "{target}: {}", stderr(&second));
        assert_eq!(stdout(&first), stdout(&second), "{target} round trip");
    }
}

#[test]
fn exported_files_analyze_identically_to_their_catalog_refs() {
    let direct = run(&["analyze", "catalog:sl_over_sp:R:m=2", "--json"]);
    let path = scratch("reanalyze.json");
    let exported = run(&["export", "catalog:sl_over_sp:R:m=2"]);
    fs::write(&path, stdout(&exported)).unwrap();
    let via_file = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(exit(&via_file), 0, "stderr: {}", stderr(&via_file));
    assert_eq!(stdout(&direct), stdout(&via_file));
}

#[test]
fn unknown_inputs_exit_two() {
    let out = run(&["analyze", "catalog:nonsense"]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("nonsense"));

    let out = run(&["sweep", "bogus_family"]);
    assert_eq!(exit(&out), 2);

    let out = run(&["analyze", "/no/such/file.json"]);
    assert_eq!(exit(&out), 2);

    let out = run(&["volume", "mc", "--shape", "dodecahedron"]);
    assert_eq!(exit(&out), 2);
}

#[test]
fn max_rank_cap_refuses_large_charts() {
    let out = run(&["analyze", "catalog:sl_over_product:C:8=4+4", "--max-rank", "2"]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("max-rank"), "got: {}", stderr(&out));

    // As a sweep filter it skips rows instead of failing.
    let out = run(&["sweep", "sl_over_product:C", "n=2..8", "--csv", "--max-rank", "2"]);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).lines().count() > 1);
}

#[test]
fn internal_failures_are_never_observed() {
    // Exit 3 is reserved for broken invariants; a healthy build never
    // produces it, whatever we throw at the analyzer.
    for target in [
        "catalog:sl_over_product:C:8=3+3+2",
        "catalog:sl_over_product:R:5=3+2",
        "catalog:so_over_product:C:7=5+2",
        "catalog:so_over_product:R:(3,2)=(2,1)+(1,1)",
        "catalog:sp_over_product:C:4=2+2",
        "catalog:sl_over_sp:C:m=3",
        "catalog:sl_over_so_pq:R:(3,2)",
        "catalog:sl_over_so_pq:C:5",
        "catalog:group_manifold:sp2R",
        "catalog:complexification:so32",
        "catalog:direct:so7c_over_g2",
    ] {
        let out = run(&["analyze", target, "--certificates"]);
        assert_ne!(exit(&out), 3, "{target}: {}", stderr(&out));
        assert_eq!(exit(&out), 0, "{target}: {}", stderr(&out));
    }
}

#[test]
fn oracle_flag_prints_an_estimate_near_p() {
    let out = run(&[
        "analyze",
        "catalog:sl_over_sp:C:m=2",
        "--oracle",
        "2000",
        "--seed",
        "5",
    ]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    let line = text
        .lines()
        .find(|l| l.starts_with("oracle estimate"))
        .expect("oracle line");
    let est: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((est - 4.0).abs() < 1e-3, "estimate {est}");
}

#[test]
fn threads_flag_is_accepted_anywhere() {
    let out = run(&["analyze", "catalog:group_manifold:sl2R", "--threads", "2"]);
    assert_eq!(exit(&out), 0, "stderr: {}", stderr(&out));
    let out = run(&["--threads", "2", "analyze", "catalog:group_manifold:sl2R"]);
    assert_eq!(exit(&out), 0, "stderr: {}", stderr(&out));
}
