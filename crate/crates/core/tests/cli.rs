use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borelpaths"))
        .args(args)
        .env_remove("BORELPATHS_FORMAT")
        .env_remove("BORELPATHS_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn mult_of_segments_and_partitions() {
    let out = run(&["mult", "--lex", "12", "71"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1980\n");

    assert_eq!(stdout(&run(&["mult", "--partition", "1"])), "1\n");
    assert_eq!(
        stdout(&run(&[
            "mult", "--revlex", "12", "71", "--method", "closed"
        ])),
        "1984\n"
    );
    let all = stdout(&run(&[
        "mult",
        "--partition",
        "12,11,10,9,8,7,6,5,3",
        "--method",
        "all",
    ]));
    assert!(all.contains("agree        true"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["mult", "--partition", "3,3"]).status.code(), Some(2));
    assert_eq!(run(&["mult", "--lex", "12", "90"]).status.code(), Some(2));
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "21"]).status.code(), Some(3));
    let capped = run(&[
        "hilbert",
        "--partition",
        "6,5,2",
        "--i-max",
        "6",
        "--brute",
        "--mem-cap",
        "1000",
    ]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn verify_csv_for_twelve() {
    let out = run(&["verify", "--n", "12", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let records = borelpaths_core::export::parse_csv(&text).unwrap();
    assert_eq!(
        records.iter().map(|r| r.u).collect::<Vec<_>>(),
        (67..=78).collect::<Vec<_>>()
    );
    let row71 = text.lines().find(|l| l.starts_with("12,71,")).unwrap();
    assert!(row71.contains(",LEX,"));
}

#[test]
fn verify_resumes_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("verdicts.jsonl");
    let cache = cache.to_str().unwrap();
    let first = run(&["verify", "--n", "9", "--cache", cache]);
    assert!(first.status.success());
    let lines = std::fs::read_to_string(cache).unwrap();
    assert_eq!(lines.lines().count(), 9);
    let second = run(&["verify", "--n", "9", "--cache", cache]);
    assert_eq!(std::fs::read_to_string(cache).unwrap(), lines);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--threads", "1", "verify", "--n", "11"]);
    let b = run(&["--threads", "4", "verify", "--n", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_borelpaths"))
        .args([
            "shift-table",
            "--n-max",
            "12",
            "--output",
            path.to_str().unwrap(),
        ])
        .env("BORELPATHS_FORMAT", "table")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().last(), Some("   12  RRRRLLLLL==="));
}

#[test]
fn enumerate_json_lines() {
    let text = stdout(&run(&["enumerate", "--n", "4", "--u", "7", "--annotate"]));
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["parts"], serde_json::json!([4, 3]));
    assert_eq!(lines[1]["parts"], serde_json::json!([4, 2, 1]));
    assert_eq!(lines[0]["e"], "4");
    let plain = stdout(&run(&["enumerate", "--n", "12", "--u", "71"]));
    assert_eq!(plain.lines().count(), 5);
    assert!(!plain.contains("\"e\""));
    let deg3 = stdout(&run(&["enumerate", "--n", "4", "-d", "3", "--u", "13"]));
    assert_eq!(deg3.lines().count(), 5);
}

#[test]
fn hilbert_report() {
    let text = stdout(&run(&[
        "hilbert",
        "--partition",
        "12,11,10,9,8,7,6,5,3",
        "--i-max",
        "7",
        "--poly",
        "--brute",
    ]));
    let report: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(report["hf"][7], "4188404");
    assert_eq!(report["e"], "1980");
    assert_eq!(report["poly_den"], "39916800");
    assert_eq!(report["agree"], true);
    let deg3 = stdout(&run(&[
        "hilbert",
        "--generators",
        "x3*x5*x6",
        "--n",
        "6",
        "--i-max",
        "2",
        "--brute",
    ]));
    let report: serde_json::Value = serde_json::from_str(deg3.trim()).unwrap();
    assert_eq!(report["hf"][2], "343");
    assert_eq!(report["e"], "176");
}

#[test]
fn oracle_passes() {
    let out = run(&["oracle", "--n-max", "9", "--format", "table"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}
