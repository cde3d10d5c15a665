use std::path::PathBuf;
use std::process::Command;

use fuscat::{exit, run, Outcome};
use fuscat_core::{FusionRing, KParams, QuadVal};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn fuscat(args: &[&str]) -> Outcome {
    run(std::iter::once("fuscat").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = fuscat(&full);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    (out.code, v)
}

fn quad(s: &str) -> QuadVal {
    serde_json::from_str(s).unwrap()
}

#[test]
fn verify_table1_passes() {
    let out = fuscat(&["verify", &fixture("table1.json")]);
    assert_eq!(out.code, exit::OK, "{}", out.stdout);
    assert!(out.stdout.contains("based ring: yes"));
}

#[test]
fn table1_codegrees_round_trip_exactly() {
    let (code, v) = json(&["codegrees", &fixture("table1.json")]);
    assert_eq!(code, exit::OK);
    let got: Vec<QuadVal> = serde_json::from_value(v["result"]["codegrees"].clone()).unwrap();
    let want = vec![
        quad(r#"{"a": "36", "b": "20", "c": 3}"#),
        QuadVal::from_int(8),
        QuadVal::from_int(8),
        quad(r#"{"a": "36", "b": "-20", "c": 3}"#),
    ];
    assert_eq!(got, want);
    let gates = &v["result"]["gates"];
    assert_eq!(gates["reciprocal_sum_is_one"], true);
    assert_eq!(gates["square_bound_holds"], false);
    let slack: QuadVal = serde_json::from_value(gates["slack"].clone()).unwrap();
    assert_eq!(slack.sign(), fuscat_core::Sign::Negative);
}

#[test]
fn codegree_text_labels_the_failing_gate() {
    let out = fuscat(&["codegrees", &fixture("table1.json")]);
    assert!(out
        .stdout
        .contains("36 + 20*sqrt(3), 8, 8, 36 - 20*sqrt(3)"));
    assert!(out.stdout.contains("sum of reciprocals equals 1: PASS"));
    assert!(out
        .stdout
        .contains("sum of squared reciprocals at most (1 + 1/f1)/2: FAIL"));
}

#[test]
fn broken_ring_exits_with_two() {
    let text = std::fs::read_to_string(fixture("table1.json")).unwrap();
    let mut ring = FusionRing::from_json(&text).unwrap();
    ring = ring.with_entry(1, 1, 2, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, ring.to_json()).unwrap();
    let bad = bad.to_string_lossy().into_owned();
    assert_eq!(fuscat(&["verify", &bad]).code, exit::BAD_RING);
    assert_eq!(fuscat(&["codegrees", &bad]).code, exit::BAD_RING);

    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{\"rank\": 4,").unwrap();
    let out = fuscat(&["verify", &garbled.to_string_lossy()]);
    assert_eq!(out.code, exit::BAD_RING);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(fuscat(&["bogus"]).code, exit::USAGE);
    assert_eq!(fuscat(&[]).code, exit::USAGE);
    assert_eq!(fuscat(&["obstruct", "k1"]).code, exit::USAGE);
    assert_eq!(
        fuscat(&["--workers", "0", "obstruct", "k1", "--max-e", "3"]).code,
        exit::USAGE
    );
    assert_eq!(fuscat(&["classify", "--xmax", "-1"]).code, exit::USAGE);
    assert_eq!(fuscat(&["family", "k2", "--c", "-3"]).code, exit::USAGE);
    assert_eq!(
        fuscat(&["orbits", "--c", "4", "--order", "8"]).code,
        exit::USAGE
    );
    // csv needs a table
    assert_eq!(
        fuscat(&["--format", "csv", "family", "k1", "--e", "2"]).code,
        exit::USAGE
    );
    assert_eq!(fuscat(&["--help"]).code, exit::OK);
}

#[test]
fn search_budget_exits_with_four() {
    let out = fuscat(&[
        "minroots",
        "--a",
        "0",
        "--b",
        "3",
        "--c",
        "5",
        "--max-order",
        "40",
        "--max-count",
        "4",
    ]);
    assert_eq!(out.code, exit::BUDGET);
    assert!(out.stdout.contains("more than 4"));
    let out = fuscat(&[
        "minroots",
        "--a",
        "0",
        "--b",
        "1",
        "--c",
        "2",
        "--max-order",
        "1000",
    ]);
    assert_eq!(out.code, exit::BUDGET);
}

#[test]
fn reports_identical_across_worker_counts() {
    let cases: &[&[&str]] = &[
        &["classify"],
        &["obstruct", "k1", "--max-e", "30"],
        &["obstruct", "k2", "--max-c", "20", "--twists"],
        &[
            "minroots",
            "--a",
            "0",
            "--b",
            "1",
            "--c",
            "5",
            "--max-order",
            "40",
            "--max-count",
            "4",
        ],
        &["orbits", "--c", "21", "--order", "84", "--certificate"],
    ];
    for args in cases {
        for format in ["json", "text"] {
            let mut base = vec!["--format", format, "--workers", "1"];
            base.extend_from_slice(args);
            let one = fuscat(&base);
            base[3] = "4";
            let four = fuscat(&base);
            let again = fuscat(&base);
            assert_eq!(one, four, "{args:?}");
            assert_eq!(four, again, "{args:?}");
        }
    }
}

#[test]
fn json_keys_are_sorted_and_digest_is_stable() {
    let out = fuscat(&["--format", "json", "obstruct", "k2", "--max-c", "3"]);
    let top: Vec<&str> = out
        .stdout
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    let (_, a) = json(&["obstruct", "k2", "--max-c", "3"]);
    let (_, b) = json(&["--workers", "2", "obstruct", "k2", "--max-c", "3"]);
    let (_, c) = json(&["obstruct", "k2", "--max-c", "4"]);
    assert_eq!(a["input_digest"], b["input_digest"]);
    assert_ne!(a["input_digest"], c["input_digest"]);
    assert_eq!(a["command"], "obstruct k2 --max-c 3");
    assert!(a.get("timing_ms").is_none());
    let (_, t) = json(&["--timing", "obstruct", "k2", "--max-c", "3"]);
    assert!(t["timing_ms"].is_u64());
}

#[test]
fn obstruct_json_has_per_parameter_records() {
    let (code, v) = json(&["obstruct", "k1", "--max-e", "12"]);
    assert_eq!(code, exit::OK);
    let reports = v["result"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 13);
    for r in reports {
        for key in ["param", "verdict", "case", "exact_values", "assumptions"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
    }
    let e9 = &reports[9];
    assert_eq!(e9["verdict"], "infeasible");
    assert_eq!(e9["exact_values"]["c_sf"], 93);
}

#[test]
fn emitted_family_ring_verifies() {
    let dir = tempfile::tempdir().unwrap();
    for (fam, flag, n, kp) in [
        ("k1", "--e", "9", KParams::k1(9)),
        ("k2", "--c", "7", KParams::k2(7)),
    ] {
        let path = dir.path().join(format!("{fam}.json"));
        let p = path.to_string_lossy().into_owned();
        let out = fuscat(&["family", fam, flag, n, "--emit", &p]);
        assert_eq!(out.code, exit::OK, "{}", out.stderr);
        assert_eq!(fuscat(&["verify", &p]).code, exit::OK);
        let back = FusionRing::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, kp.build().unwrap());
    }
}

#[test]
fn family_r_reports_violation_or_k_params() {
    let (code, v) = json(&[
        "family", "r", "--x", "-1", "--y", "0", "--g", "-1", "--d", "-14",
    ]);
    assert_eq!(code, exit::OK);
    assert_eq!(v["result"]["member"], "K2(7)");
    let (code, v) = json(&[
        "family", "r", "--x", "1", "--y", "2", "--g", "-1", "--d", "3",
    ]);
    assert_eq!(code, exit::BAD_RING);
    assert!(v["result"]["violation"].as_str().unwrap().contains("odd"));
}

#[test]
fn classify_csv_has_one_row_per_quadruple() {
    let out = fuscat(&[
        "--format", "csv", "classify", "--xmax", "1", "--ymax", "2", "--gmax", "3", "--dmax", "10",
    ]);
    assert_eq!(out.code, exit::OK);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_bytes());
    assert_eq!(rdr.headers().unwrap().len(), 13);
    let (_, v) = json(&[
        "classify", "--xmax", "1", "--ymax", "2", "--gmax", "3", "--dmax", "10",
    ]);
    assert_eq!(
        rdr.records().count() as u64,
        v["result"]["enumerated"].as_u64().unwrap()
    );
}

#[test]
fn binary_sets_the_process_exit_code() {
    let bin = env!("CARGO_BIN_EXE_fuscat");
    let ok = Command::new(bin)
        .args(["obstruct", "k2", "--max-c", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(exit::OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("survivors: {0, 1, 2}"));
    let bad = Command::new(bin)
        .args(["verify", "/definitely/missing.json"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(exit::BAD_RING));
}
