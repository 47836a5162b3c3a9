use std::process::{Command, Output};

fn rlah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlah"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lah_table_rows() {
    let o = rlah(&["table", "--n", "3", "--r", "0", "--a", "1", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n0 1\n0 2 1\n0 6 6 1\n");
}

#[test]
fn symbolic_table() {
    let o = rlah(&["table", "--n", "2", "--r", "1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1), Some("a + b | 1"));
    assert_eq!(stdout(&rlah(&["table", "--n", "0", "--r", "5"])), "1\n");
}

#[test]
fn negative_weights_are_accepted() {
    let o = rlah(&["table", "--n", "2", "--a", "-1", "--b", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("0 1 1"));
}

#[test]
fn check_passes_and_skips() {
    let o = rlah(&["check", "--id", "connection", "--n", "0..6", "--r", "0..3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 28);
    assert!(text.lines().all(|l| l.ends_with(" PASS")));
    assert!(text.starts_with("CONNECTION n=0 r=0 PASS\n"));

    let o = rlah(&[
        "check", "--id", "rlah_ii", "--n", "2", "--k", "1", "--r", "0", "--s", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "RLAH_II n=2 k=1 r=0 s=3 SKIP\n");
}

#[test]
fn empty_selection_is_silent() {
    let o = rlah(&["check", "--n", "3..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rlah(&["check", "--id", "nope"]).status.code(), Some(2));
    assert_eq!(rlah(&["constructions", "--id", "v"]).status.code(), Some(2));
    assert_eq!(rlah(&["check", "--n", "x..3"]).status.code(), Some(2));
    assert_eq!(
        rlah(&["table", "--n", "2", "--a", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rlah(&["sequences", "bell", "--n", "13"]).status.code(),
        Some(2)
    );
    assert_eq!(rlah(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn oracle_cap() {
    let o = rlah(&["oracle", "--n", "9", "--r", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));

    let o = rlah(&["oracle", "--n", "7", "--r", "3", "--cap-override", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("compared 144 cells"));

    let o = rlah(&["oracle", "--n", "0", "--r", "0"]);
    assert_eq!(stdout(&o), "ORACLE n=0 k=0 r=0 PASS\ncompared 1 cells\n");
}

#[test]
fn constructions_report() {
    let o = rlah(&[
        "constructions",
        "--id",
        "iv",
        "--n",
        "0..4",
        "--r",
        "0..2",
        "--s",
        "0..2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.is_empty());
    assert!(text
        .lines()
        .all(|l| l.starts_with("IV ") && l.contains(" PASS ")));
    assert!(!text.contains("r=0 s=1"));

    let o = rlah(&[
        "constructions",
        "--id",
        "i_pos",
        "--n",
        "2",
        "--k",
        "1",
        "--r",
        "1",
        "--s",
        "0",
        "--trace",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("I_POS n=2 k=1 r=1 s=0 PASS pairs=8 fixed=4 signed_sum=4 closed_form=4")
    );
    let trace: Vec<&str> = lines.collect();
    assert_eq!(trace.len(), 8);
    assert_eq!(trace.iter().filter(|l| l.ends_with("fixed")).count(), 4);
}

#[test]
fn sequences_match_fixtures() {
    let o = rlah(&["sequences", "bell", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split(' ').nth(3).unwrap().to_string())
        .collect();
    assert_eq!(values, ["1", "1", "2", "5", "15", "52", "203", "877"]);

    let o = rlah(&["sequences", "a000262"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A000262 n=6 r=0 4051 PASS"));

    let bell = rlah(&["sequences", "bell", "--format", "csv"]);
    let rbell = rlah(&["sequences", "r_bell", "--r", "0", "--format", "csv"]);
    let col = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(3).unwrap().to_string())
            .collect()
    };
    assert_eq!(col(&bell), col(&rbell));
}

#[test]
fn csv_header_and_json_round_trip() {
    let args = [
        "check",
        "--id",
        "vertical,inversion",
        "--n",
        "0..3",
        "--r",
        "0..1",
    ];
    let csv = stdout(&rlah(&[&args[..], &["--format", "csv"]].concat()));
    assert_eq!(csv.lines().next(), Some("identity,n,k,m,r,s,status"));

    let json = stdout(&rlah(&[&args[..], &["--format", "json"]].concat()));
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, json);

    let text = stdout(&rlah(&args));
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), text.lines().count());
    assert_eq!(rows.len(), csv.lines().count() - 1);
    for ((row, line), csv_line) in rows.iter().zip(text.lines()).zip(csv.lines().skip(1)) {
        assert!(line.ends_with(row["status"].as_str().unwrap()));
        assert!(line.starts_with(row["identity"].as_str().unwrap()));
        assert!(csv_line.starts_with(row["identity"].as_str().unwrap()));
        assert!(line.contains(&format!("n={}", row["n"])));
    }
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["check", "--id", "shift,orth", "--n", "0..4", "--r", "0..2"];
    let one = stdout(&rlah(&[&args[..], &["--jobs", "1"]].concat()));
    let four = stdout(&rlah(&[&args[..], &["--jobs", "4"]].concat()));
    assert_eq!(one, four);
}
