use std::process::{Command, Output};

use balancing_core::identities::VerificationReport;

fn balancing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balancing"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn seq_csv_documented_output() {
    let out = balancing(&["seq", "--kind", "balancing", "--to", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "B_0,B_1,B_2,B_3,B_4,B_5\n0,1,6,35,204,1189\n"
    );
}

#[test]
fn verify_general_alt_json_passes() {
    let out = balancing(&[
        "verify",
        "--identity",
        "general-alt",
        "--r",
        "4",
        "--n-max",
        "100",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = VerificationReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(rep.is_pass());
    assert_eq!(rep.n_range, (7, 100));
    assert_eq!(rep.checked, 94);
}

#[test]
fn printed_r5_reports_failures_and_exits_1() {
    let args = ["verify", "--identity", "cor-printed-r5", "--n-max", "50"];
    let first = balancing(&args);
    let second = balancing(&args);
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("checked   41"));
    assert!(text.contains("n=12 "));
}

#[test]
fn json_report_round_trips_through_binary() {
    let out = balancing(&[
        "verify",
        "--identity",
        "cor-printed-r5",
        "--n-max",
        "30",
        "--format",
        "json",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rep = VerificationReport::from_json(&text).unwrap();
    assert_eq!(rep.failures.len(), 19);
    assert_eq!(rep.to_json(), text.trim_end());
}

#[test]
fn output_file_receives_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = balancing(&[
        "verify",
        "--identity",
        "pair-telescope",
        "--n-max",
        "50",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rep = VerificationReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep.checked, 50);
}

#[test]
fn errors_go_to_stderr_with_exit_2() {
    for args in [
        &["seq", "--kind", "balancing", "--to", "5", "--nope"][..],
        &[
            "verify",
            "--identity",
            "general-alt",
            "--r",
            "4",
            "--n-min",
            "9",
            "--n-max",
            "3",
        ],
        &["closed", "--identity", "pair-plain", "--n", "1"],
        &[
            "verify",
            "--identity",
            "general-alt",
            "--a",
            "1",
            "--b",
            "1",
            "--r",
            "3",
            "--n-max",
            "10",
        ],
        &["seq", "--kind", "u", "--a", "2", "--b", "-1", "--to", "4"],
    ] {
        let out = balancing(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn table_and_general_params() {
    let out = balancing(&[
        "table",
        "--identity",
        "general-u",
        "--a",
        "3",
        "--b",
        "2",
        "--r",
        "2",
        "--n-max",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}
