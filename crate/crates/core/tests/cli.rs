use std::io::Write;
use std::process::{Command, Output, Stdio};

use stratameter::cli::{Algorithm, OutputRecord};
use stratameter::indis::{indispensability_gen, indispensability_ref, StartOrders};
use stratameter::meter::{Arity, MeterSeq};

const WORKED: &str = "1 0 0 1 0 1 0 0";

fn stratameter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratameter"))
        .args(args)
        .env_remove("MEMGUARD")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stratameter"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn compute_both_agree() {
    let out = stratameter(&["compute", WORKED]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: AGREE"));
    let ref_row = text.lines().find(|l| l.starts_with("ref ")).unwrap();
    let values: Vec<&str> = ref_row.split_whitespace().skip(1).collect();
    assert_eq!(values, ["7", "0", "2", "5", "3", "6", "1", "4"]);
}

#[test]
fn json_records_round_trip_and_recompute() {
    for alg in ["ref", "gen"] {
        let out = stratameter(&["compute", WORKED, "--algorithm", alg, "--format", "json", "--trace"]);
        assert_eq!(code(&out), 0);
        let record: OutputRecord = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(record.schema, 1);
        assert!(record.trace.is_some());
        let meter = MeterSeq::unvalidated(record.input.clone())
            .validate(Arity::new(record.i, record.a).unwrap())
            .unwrap();
        assert_eq!(meter.class(), record.class);
        let map = match record.algorithm {
            Algorithm::Ref => indispensability_ref(&meter).unwrap(),
            Algorithm::Gen => indispensability_gen(&meter, &StartOrders::new()).unwrap(),
        };
        assert_eq!(map.values().as_slice(), record.indispensability.as_slice());
        assert_eq!(
            map.priority_order().positions().as_slice(),
            record.priority_order.as_slice()
        );
        let again = serde_json::to_string(&record).unwrap();
        assert_eq!(serde_json::from_str::<OutputRecord>(&again).unwrap(), record);
    }
}

#[test]
fn json_both_carries_verdict() {
    let out = stratameter(&["compute", WORKED, "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "AGREE");
    assert_eq!(doc["records"].as_array().unwrap().len(), 2);
}

#[test]
fn base_one_shifts_only_positions() {
    for format in ["csv", "table", "json"] {
        let zero = stdout(&stratameter(&["compute", WORKED, "--format", format]));
        let one = stdout(&stratameter(&["compute", WORKED, "--format", format, "--base", "1"]));
        match format {
            "json" => assert_eq!(zero, one),
            "csv" => {
                for (a, b) in zero.lines().zip(one.lines()) {
                    let (a, b): (Vec<&str>, Vec<&str>) = (a.split(',').collect(), b.split(',').collect());
                    if a[0].parse::<usize>().is_ok() {
                        assert_eq!(a[0].parse::<usize>().unwrap() + 1, b[0].parse::<usize>().unwrap());
                        assert_eq!(a[1..], b[1..]);
                    } else {
                        assert_eq!(a, b);
                    }
                }
            }
            _ => {
                for (a, b) in zero.lines().zip(one.lines()) {
                    if a.starts_with("position") || a.starts_with("order") {
                        assert_ne!(a, b);
                    } else {
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}

#[test]
fn csv_layout() {
    let out = stdout(&stratameter(&[
        "compute",
        WORKED,
        "--algorithm",
        "ref",
        "--format",
        "csv",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "position,weight,indispensability");
    assert_eq!(lines[1], "0,1,7");
    assert_eq!(lines.len(), 9);
}

#[test]
fn meter_from_stdin() {
    let out = with_stdin(&["compute", "-", "--algorithm", "gen"], "2 0 0 1 0 0\n");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("MNSM f=2"));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32, &str); 8] = [
        (
            &["compute", "2 0 0 1 0 0", "--algorithm", "ref"],
            1,
            "2 or 3 top pulses",
        ),
        (&["compute", "1 0 x"], 1, "parse error"),
        (&["compute", ""], 1, "empty"),
        (&["compute", "0 1 0"], 1, "not maximal"),
        (
            &["compute", "1 0 1 0 1 0 1 0 1 0", "--algorithm", "gen", "--a", "5"],
            1,
            "no canonical start order",
        ),
        (&["compute", WORKED, "--bogus"], 1, ""),
        (&["descend", WORKED, "--accumulator", "0:0"], 2, "adjacency"),
        (&["count", "--f", "-2"], 1, ""),
    ];
    for (args, expected, needle) in cases {
        let out = stratameter(args);
        assert_eq!(code(&out), expected, "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn custom_start_order_for_five_pulses() {
    let out = stratameter(&[
        "compute",
        "1 0 1 0 1 0 1 0 1 0",
        "--algorithm",
        "gen",
        "--a",
        "5",
        "--start-order",
        "0,2,4,1,3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let record: OutputRecord = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(record.indispensability.starts_with(&[9]));
}

#[test]
fn descend_with_valid_accumulator() {
    let out = stratameter(&["descend", WORKED, "--accumulator", "0:2,3:0,5:1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("7 0 2 5 3 6 1 4"));
}

#[test]
fn enumerate_lists_language() {
    let out = stdout(&stratameter(&["enumerate", "--f", "0"]));
    assert_eq!(out, "0 0\n0 0 0\n# count=2\n");
    let out = stdout(&stratameter(&["enumerate", "--f", "1", "--kind", "mnsm"]));
    assert_eq!(out, "1 0\n1 0 0\n# count=2\n");
    let out = stdout(&stratameter(&["enumerate", "--f", "1"]));
    assert!(out.ends_with("# count=12\n"));
    let out = stdout(&stratameter(&["enumerate", "--f", "3", "--limit", "1"]));
    assert!(out.contains("# truncated at limit 1"));
}

#[test]
fn memguard_controls_enumeration() {
    let run = |guard: &str| {
        Command::new(env!("CARGO_BIN_EXE_stratameter"))
            .args(["enumerate", "--f", "2"])
            .env("MEMGUARD", guard)
            .output()
            .unwrap()
    };
    let refused = run("100");
    assert_eq!(code(&refused), 1);
    assert!(stderr(&refused).contains("1872"));
    assert_eq!(code(&run("5000")), 0);
    assert_eq!(code(&run("lots")), 1);
    let out = stratameter(&["enumerate", "--f", "3"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn validate_lines() {
    let out = stratameter(&["validate", WORKED]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "GNSM f=1 top=3"));
    let out = stratameter(&["validate", "2 0 0 1 0 0"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "MNSM f=2"));
    let out = stratameter(&["validate", "1 0 0 0 1 0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("invalid: "));
    let out = stratameter(&["validate", "1 1 0", "--i", "1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn count_values() {
    assert_eq!(stdout(&stratameter(&["count", "--f", "-1"])).trim(), "1");
    assert_eq!(stdout(&stratameter(&["count", "--f", "1"])).trim(), "12");
    assert_eq!(stdout(&stratameter(&["count", "--f", "2"])).trim(), "1872");
    assert_eq!(
        stdout(&stratameter(&["count", "--f", "1", "--kind", "mnsm"])).trim(),
        "2"
    );
}

#[test]
fn check_equiv_passes_and_detects_faults() {
    let out = stratameter(&["check-equiv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        "checked 1884 exhaustive + 500 sampled, 0 mismatches"
    );
    let out = stratameter(&[
        "check-equiv",
        "--f-max",
        "1",
        "--samples",
        "10",
        "--start-order",
        "0,1,2",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("first mismatch"));
}

#[test]
fn help_goes_to_stdout() {
    let out = stratameter(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("compute"));
}
