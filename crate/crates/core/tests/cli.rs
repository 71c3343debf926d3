use std::process::{Command, Output};

use flatstat::algebra::QPolynomial;
use flatstat::oracle::Oracle;
use serde_json::Value;

fn flatstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatstat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn flatten_fixtures() {
    let o = flatstat(&["flatten", "7,1,5,6,4,3,2,8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1 7 2)(3 5 4 6)(8) / 1,7,2,3,5,4,6,8");
    assert_eq!(stdout(&flatstat(&["flatten", "(1)(2)"])), "1,2");
    let bad = flatstat(&["flatten", "1,1,2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not a permutation"));
}

#[test]
fn dist_fixtures_and_exit_codes() {
    let run = |args: &[&str]| stdout(&flatstat(args));
    assert_eq!(
        run(&["dist", "--stat", "des", "--n", "3", "--method", "closed"]),
        "4 + 2*q"
    );
    assert_eq!(
        run(&[
            "dist",
            "--stat",
            "valley",
            "--n",
            "3",
            "--method",
            "recurrence"
        ]),
        "6"
    );
    assert_eq!(run(&["dist", "--stat", "asc", "--n", "2"]), "2*q");
    let unsupported = flatstat(&["dist", "--stat", "peak", "--n", "5", "--method", "kernel"]);
    assert_eq!(unsupported.status.code(), Some(3));
    let parse = flatstat(&["dist", "--stat", "des", "--n", "x"]);
    assert_eq!(parse.status.code(), Some(2));
}

#[test]
fn json_round_trips() {
    let o = flatstat(&["dist", "--stat", "321", "--n", "8", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"]["name"], "dist");
    let p: QPolynomial = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(p.eval_one(), flatstat::algebra::factorial(8));
    assert_eq!(serde_json::to_value(&p).unwrap(), v["payload"]);
}

#[test]
fn outputs_are_deterministic() {
    let cases: [&[&str]; 4] = [
        &[
            "dist", "--stat", "peak", "--n", "7", "--method", "brute", "--format", "json",
        ],
        &[
            "ddescent", "--n", "7", "--d", "2", "--source", "brute", "--format", "csv",
        ],
        &["series-check", "--name", "Gv", "--order", "5"],
        &["verify", "--n-max", "4", "--d-max", "2"],
    ];
    for args in cases {
        let a = flatstat(args);
        let b = flatstat(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn ddescent_csv_matches_oracle() {
    let o = flatstat(&["ddescent", "--n", "9", "--d", "3", "--format", "csv"]);
    let expected = Oracle::new(10).brute_ddescent_table(9, 3).unwrap().to_csv();
    assert_eq!(stdout(&o), expected.trim_end());
}

#[test]
fn remaining_commands() {
    assert_eq!(
        stdout(&flatstat(&["avg", "--stat", "123", "--n", "100"])),
        "5147/300"
    );
    assert_eq!(
        stdout(&flatstat(&[
            "bijection",
            "--direction",
            "transport",
            "--input",
            "7,5,1,6,2,4,3,8"
        ])),
        "7,3,1,6,5,2,4,8"
    );
    assert_eq!(flatstat(&["verify", "--n-max", "1"]).status.code(), Some(0));
    let fault = flatstat(&["verify", "--n-max", "3", "--inject-fault"]);
    assert_eq!(fault.status.code(), Some(1));
    assert!(stdout(&fault).contains("first failure: [oracle] (321, 3, recurrence)"));
    let capped = Command::new(env!("CARGO_BIN_EXE_flatstat"))
        .args(["dist", "--stat", "des", "--n", "9", "--method", "brute"])
        .env("FLATSTAT_MAX_N", "8")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let sum = flatstat(&[
        "analytic", "--name", "valley", "--n", "3", "--q", "0.75", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&sum)).unwrap();
    assert!((v["payload"]["value"].as_f64().unwrap() - 6.0).abs() < 1e-10);
}
