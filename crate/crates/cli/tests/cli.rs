use std::process::{Command, Output};

use serde_json::Value;

fn prank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prank")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn one_record(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = prank(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut records = json_lines(&out);
    assert_eq!(records.len(), 1);
    records.remove(0)
}

#[test]
fn single_curve_examples() {
    let r = one_record(&["prank", "--p", "5", "--m", "4", "--n", "4"]);
    assert_eq!(r["gamma"], "3");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["agreement"]["oracle"], "3");

    let r = one_record(&["prank", "--p", "3", "--curve", "dn", "--n", "4"]);
    assert_eq!(r["gamma"], "2");

    let r = one_record(&["prank", "--p", "2", "--m", "3", "--n", "3"]);
    assert_eq!(r["gamma"], "0");
    assert_eq!(r["supersingular"], true);
}

#[test]
fn every_method_gives_the_same_value() {
    for method in ["auto", "naive", "dp", "oracle", "closed"] {
        let r = one_record(&["prank", "--p", "7", "--m", "6", "--n", "8", "--method", method]);
        assert_eq!(r["gamma"], "8", "method {method}");
    }
}

#[test]
fn dgz_and_bks_curves() {
    assert_eq!(one_record(&["prank", "--p", "3", "--curve", "dgz", "--h", "1"])["gamma"], "58");
    assert_eq!(one_record(&["prank", "--p", "5", "--curve", "bks", "--h", "1"])["gamma"], "9");
}

#[test]
fn gamma_is_a_string_even_when_large() {
    let r = one_record(&["prank", "--p", "7", "--m", "342", "--n", "342", "--method", "dp"]);
    assert!(r["gamma"].is_string());
    assert!(r["genus"].is_string());
    let g: u128 = r["gamma"].as_str().unwrap().parse().unwrap();
    let genus: u128 = r["genus"].as_str().unwrap().parse().unwrap();
    assert!(g <= genus);
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        vec!["prank", "--p", "4", "--m", "3", "--n", "3"],
        vec!["prank", "--p", "5", "--m", "5", "--n", "3"],
        vec!["prank", "--p", "5", "--curve", "dn"],
        vec!["prank", "--p", "5", "--curve", "dgz", "--h", "1", "--method", "oracle"],
        vec!["table", "--table", "9", "--p", "7"],
        vec!["sweep", "--p-list", "3", "--m-range", "5..2", "--n-range", "2..3"],
        vec!["no-such-command"],
    ] {
        let out = prank(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(prank(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_grid_and_order() {
    let out = prank(&["sweep", "--p-list", "3", "--m-range", "2..6", "--n-range", "2..6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out).len(), 25);

    let csv = prank(&["sweep", "--p-list", "5", "--m-range", "2..4", "--n-range", "2..4", "--format", "csv"]);
    let text = stdout(&csv);
    assert_eq!(text.lines().next(), Some("p,m,n,genus,gamma"));
    assert_eq!(text.lines().count(), 10);
    assert!(!text.contains('\r'));

    let args = ["sweep", "--p-list", "2,3,5", "--m-range", "2..12", "--n-range", "2..12", "--format", "csv"];
    let serial = stdout(&prank(&[&args[..], &["--jobs", "1"]].concat()));
    let parallel = stdout(&prank(&[&args[..], &["--jobs", "4"]].concat()));
    assert_eq!(serial, parallel);
}

#[test]
fn sweep_reports_errors_inline() {
    let out = prank(&["sweep", "--p-list", "2,3", "--m-range", "3..3", "--n-range", "3..3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], "2,3,3,1,0");
    assert!(rows[1].starts_with("3,3,3,") && rows[1].contains("error"));
}

#[test]
fn classify_reports_zero_rank_without_supersingularity() {
    let out = prank(&["classify", "--p", "2", "--m", "3", "--n", "5", "--format", "json"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["supersingular"], false);
    assert_eq!(r["gamma"], "0");

    let out = prank(&["classify", "--p", "2", "--m", "3", "--n", "3", "--format", "json"]);
    assert_eq!(json_lines(&out)[0]["supersingular"], true);
}

#[test]
fn table_rows() {
    let out = prank(&["table", "--table", "3", "--p", "3", "--r", "1..2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.contains("y^2=x^8+1") && l.contains(",2,2,ok,")), "{text}");

    let out = prank(&["table", "--table", "fermat-families", "--p", "7", "--format", "json"]);
    for row in json_lines(&out) {
        assert_eq!(row["agreement"], "ok", "{row}");
    }

    // characteristic-2 rows do not apply at p = 7
    let text = stdout(&prank(&["table", "--table", "2", "--p", "7", "--format", "csv"]));
    assert!(text.lines().any(|l| l.contains("n/a") && l.contains("needs p = 2")));

    let a = prank(&["table", "--table", "4", "--p", "7", "--alpha-cases", "all"]);
    let b = prank(&["table", "--table", "4", "--p", "7", "--alpha-cases", "all", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites_pass() {
    for suite in ["sets", "kani-rosen", "congruence-box"] {
        let out = prank(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).contains(": pass"));
    }
    let out = prank(&["verify", "--suite", "oracle", "--max-genus", "20", "--max-p", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}
