//! Black-box tests of the binary: output formats, byte-exact files, and the
//! exit-code contract (0 = ok, 1 = verification failure, 2 = usage error).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn exit_code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

#[test]
fn table_csv_recurrence() {
    let out = run(&[
        "table",
        "--max-n",
        "12",
        "--method",
        "recurrence",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,a");
    assert_eq!(lines.len(), 14); // header + 13 data rows
    assert_eq!(lines[13], "12,89441280");
}

#[test]
fn table_defaults_to_a_single_csv_column() {
    let out = run(&["table", "--max-n", "0"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "n,a\n0,0\n");
}

#[test]
fn table_all_methods_agree() {
    let out = run(&[
        "table", "--max-n", "20", "--method", "all", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,recurrence,closed,genocchi-stirling,reduced,egf,agree"
    );
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 7);
        assert!(cells[1..6].iter().all(|c| c == &cells[1]), "row {line}");
        assert_eq!(cells[6], "true", "row {line}");
    }
}

#[test]
fn table_egf_uses_max_n_as_order() {
    let out = run(&[
        "table", "--max-n", "6", "--method", "egf", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).lines().last().unwrap() == "6,312");
}

#[test]
fn table_rejects_unknown_method() {
    let out = run(&["table", "--max-n", "5", "--method", "quadrature"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn table_rejects_bfile_for_all_methods() {
    let out = run(&[
        "table", "--max-n", "5", "--method", "all", "--format", "bfile",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn table_json_uses_decimal_strings() {
    let out = run(&["table", "--max-n", "3", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3]["n"], 3);
    assert_eq!(rows[3]["a"], "5");
}

#[test]
fn verify_small_bounds_pass() {
    let out = run(&["verify", "--max-n", "12", "--series-order", "12"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("table1"));
    assert!(text.contains("21/21 checks passed"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_default_bounds_pass() {
    let out = run(&["verify"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("21/21 checks passed"));
}

#[test]
fn verify_rejects_negative_bound() {
    let out = run(&["verify", "--max-n", "-1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_json_report_is_structured() {
    let out = run(&[
        "verify",
        "--max-n",
        "8",
        "--series-order",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 21);
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert!(checks.iter().any(|c| c["name"] == "egf_composition"));
}

#[test]
fn export_writes_exact_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let out = run(&["export", "--max-n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), b"0 0\n1 1\n2 2\n3 5\n");

    let out = run(&["export", "--max-n", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), b"0 0\n");

    let out = run(&["export", "--max-n", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().last().unwrap(), "12 89441280");
    assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
}

#[test]
fn export_rejects_unwritable_path() {
    let out = run(&["export", "--max-n", "3", "--out", "/nonexistent-dir/b.txt"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_finds_the_p3_counterexample() {
    let out = run(&["scan", "--prime", "3", "--max-n", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n,valuation,digitsum,holds\n1,1,1,true\n2,1,2,false\n"
    );
}

#[test]
fn scan_at_two_holds_through_100() {
    let out = run(&["scan", "--prime", "2", "--max-n", "100"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 101);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn scan_rejects_composite_base() {
    let out = run(&["scan", "--prime", "4", "--max-n", "5"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn scan_json_rows_are_flat() {
    let out = run(&["scan", "--prime", "3", "--max-n", "2", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[1]["n"], 2);
    assert_eq!(rows[1]["valuation"], 1);
    assert_eq!(rows[1]["digitsum"], "2");
    assert_eq!(rows[1]["holds"], false);
}

#[test]
fn genocchi_csv_list() {
    let out = run(&["genocchi", "--max-n", "8"]);
    assert_eq!(exit_code(&out), 0);
    let values: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(values, vec!["0", "1", "-1", "0", "1", "0", "-3", "0", "17"]);
}

#[test]
fn stirling_first_triangle_row_four() {
    let out = run(&[
        "stirling", "--kind", "1", "--max-n", "4", "--format", "table",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).lines().last().unwrap(), "0 -6 11 -6 1");
}

#[test]
fn stirling_rejects_kind_three() {
    let out = run(&["stirling", "--kind", "3", "--max-n", "4"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn series_f_coefficients() {
    let out = run(&["series", "--name", "f", "--order", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "j,coefficient\n0,0\n1,1\n2,1\n3,5/6\n");
}

#[test]
fn series_rejects_unknown_name() {
    let out = run(&["series", "--name", "q", "--order", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn series_h_table_format() {
    let out = run(&["series", "--name", "h", "--order", "2", "--format", "table"]);
    assert_eq!(stdout(&out), "0 0\n1 -1\n2 -1/2\n");
}
