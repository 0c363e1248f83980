use std::process::{Command, Output};

fn kgibbs(args: &[&str]) -> Output {
    kgibbs_with_threads(args, None)
}

fn kgibbs_with_threads(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kgibbs"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("KGIBBS_THREADS", t),
        None => cmd.env_remove("KGIBBS_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = kgibbs(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn approx_coefficients() {
    assert_eq!(
        ok(&["approx", "--N", "2"]),
        "n,c_num,c_den,c_decimal\n1,1,1,1.000000\n"
    );
    assert_eq!(
        ok(&["approx", "--N", "4", "--emit", "coeffs"]),
        "n,c_num,c_den,c_decimal\n1,3,4,0.750000\n3,-1,1,-1.000000\n"
    );
}

#[test]
fn approx_samples() {
    let out = ok(&["approx", "--N", "4", "--emit", "samples", "--samples", "3"]);
    let rows: Vec<_> = out.lines().skip(1).collect();
    assert_eq!(
        rows,
        ["0,1,0.000000,0,1", "1,1,1.000000,1,1", "2,1,1.000000,1,1"]
    );
}

#[test]
fn approx_other_p_gives_same_polynomial() {
    let half = ok(&["approx", "--N", "6", "--samples", "7"]);
    let third = ok(&["approx", "--N", "6", "--p", "1/3", "--samples", "7"]);
    assert_eq!(half, third);
}

#[test]
fn steepness_values() {
    assert_eq!(
        ok(&["steepness", "--N", "40", "--format", "exact"]),
        "3637485804655193/2671465728531600\n"
    );
    assert_eq!(
        ok(&["steepness", "--N", "400", "--digits", "5"]),
        "1.38379\n"
    );
    assert_eq!(ok(&["steepness", "--N", "2", "--format", "exact"]), "1\n");
}

#[test]
fn steepness_table_csv_and_json_agree() {
    let args = [
        "steepness-table",
        "--from",
        "2",
        "--to",
        "12",
        "--step",
        "2",
        "--digits",
        "8",
    ];
    let csv = ok(&args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&ok(&json_args)).unwrap();
    let rows = json["rows"].as_array().unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "N,steepness_num,steepness_den,decimal");
    assert_eq!(lines.len() - 1, rows.len());
    for (line, row) in lines[1..].iter().zip(rows) {
        let cells: Vec<_> = line.split(',').collect();
        assert_eq!(cells[0], row["N"].to_string());
        assert_eq!(cells[1], row["steepness"]["num"]);
        assert_eq!(cells[2], row["steepness"]["den"]);
        assert_eq!(cells[3], row["decimal"]);
    }
    assert_eq!(lines[1], "2,1,1,1.00000000");
    assert_eq!(lines[2], "4,7,6,1.16666666");
}

#[test]
fn overshoot_values() {
    assert_eq!(ok(&["overshoot", "--N", "10"]), "1.101182\n");
    assert_eq!(
        ok(&["overshoot", "--N", "100", "--digits", "6"]),
        "1.068784\n"
    );
    assert_eq!(
        ok(&["overshoot", "--N", "10", "--theta-step", "1/3"]),
        "1.101182\n"
    );
}

#[test]
fn overshoot_without_critical_point_fails() {
    let o = kgibbs(&["overshoot", "--N", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no critical point found"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn overshoot_table_rows() {
    let out = ok(&["overshoot-table", "--list", "4,10", "--digits", "5"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "N,overshoot,theta_lo_num,theta_lo_den,theta_hi_num,theta_hi_den,value_num,value_den,certified");
    assert!(lines[1].starts_with("4,1.18807,"));
    assert!(lines[2].starts_with("10,1.10118,"));
}

#[test]
fn gamma_values() {
    assert_eq!(ok(&["gamma", "--digits", "6"]), "1.178980\n");
    assert_eq!(ok(&["gamma", "--digits", "1"]), "1.2\n");
    assert_eq!(ok(&["gamma", "--digits", "4"]), "1.1790\n");
}

#[test]
fn verify_suites_pass() {
    let out = ok(&["verify", "--suite", "identities", "--m-max", "200"]);
    assert!(out.lines().all(|l| l.ends_with("pass")), "{out}");
    ok(&["verify", "--suite", "interpolation", "--n-max", "40"]);
    ok(&["verify", "--suite", "kernel"]);
    ok(&[
        "verify",
        "--suite",
        "identities",
        "--m-max",
        "30",
        "--audit",
    ]);
}

#[test]
fn injected_fault_fails_verify() {
    let o = kgibbs(&[
        "verify",
        "--suite",
        "identities",
        "--m-max",
        "10",
        "--inject-fault",
        "5,2",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let supercat = out
        .lines()
        .find(|l| l.contains("super-catalan"))
        .expect("super-catalan row");
    assert!(supercat.contains(",false,"), "{supercat}");
    assert!(
        !supercat.ends_with(','),
        "first failure is reported: {supercat}"
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["steepness", "--N", "3"],
        vec!["approx", "--N", "4", "--p", "one-half"],
        vec!["approx", "--N", "4", "--p", "3/2"],
        vec!["nonsense"],
        vec!["steepness"],
    ] {
        let o = kgibbs(&args);
        assert_ne!(o.status.code(), Some(0), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(kgibbs(&["steepness", "--N", "3"]).status.code(), Some(2));
    assert_eq!(kgibbs(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn output_independent_of_thread_count() {
    let args = [
        "steepness-table",
        "--from",
        "2",
        "--to",
        "60",
        "--format",
        "json",
    ];
    let one = kgibbs_with_threads(&args, Some("1"));
    let four = kgibbs_with_threads(&args, Some("4"));
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    let again = kgibbs_with_threads(&args, Some("1"));
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn bad_thread_override_is_a_usage_error() {
    let o = kgibbs_with_threads(&["gamma"], Some("zero"));
    assert_eq!(o.status.code(), Some(2));
}
