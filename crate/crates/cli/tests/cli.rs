//! End-to-end checks of the command-line interface: CSV schema, summary
//! lines, determinism for a fixed seed, and the exit-code contract.

use std::process::{Command, Output};

fn qcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn comment_value(text: &str, key: &str) -> f64 {
    let prefix = format!("# {key} ");
    text.lines()
        .find(|l| l.starts_with(&prefix))
        .unwrap_or_else(|| panic!("missing summary `{key}`"))
        .strip_prefix(&prefix)
        .unwrap()
        .trim()
        .parse()
        .expect("parsable float")
}

#[test]
fn two_qubit_capacity_summary_and_schema() {
    let out = qcorr(&[
        "capacity",
        "two-qubit",
        "--mu1",
        "1",
        "--mu2",
        "1",
        "--mu3",
        "0",
        "--sweep-p",
        "11",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let p0 = comment_value(&text, "p0");
    assert!((p0 - 0.0832217).abs() < 1e-4, "p0 = {p0}");
    let gmax = comment_value(&text, "gamma_max");
    assert!((gmax - 3.8246).abs() < 2e-3, "gamma_max = {gmax}");
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "p,f_p,gamma_E");
    // 11 data rows
    let rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    assert_eq!(rows, 11);
}

#[test]
fn deterministic_for_fixed_seed() {
    let args = [
        "hubbard",
        "maximize",
        "--modes",
        "4",
        "--particles",
        "2",
        "--partition",
        "0,1;2,3",
        "--restarts",
        "6",
        "--seed",
        "77",
    ];
    let a = qcorr(&args);
    let b = qcorr(&args);
    assert!(a.status.success());
    assert_eq!(
        stdout(&a),
        stdout(&b),
        "same seed must give identical bytes"
    );
    let emax = comment_value(&stdout(&a), "E_max");
    assert!((emax - 1.74593).abs() < 1e-3, "E_max = {emax}");
}

#[test]
fn invalid_input_exits_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["hubbard", "dimer", "--alpha-min", "0.5"],
        vec![
            "hubbard",
            "maximize",
            "--modes",
            "4",
            "--particles",
            "2",
            "--partition",
            "0;1",
        ],
        vec![
            "xx",
            "sweep-temp",
            "--b1",
            "1",
            "--b2",
            "1",
            "--t-min",
            "-0.5",
        ],
        vec!["discord", "werner", "--m", "1"],
        vec!["discord", "examples", "--which", "7"],
        vec![
            "discord",
            "geometric",
            "--state-file",
            "/nonexistent/state.txt",
        ],
        vec![
            "capacity",
            "two-qubit",
            "--mu1",
            "0",
            "--mu2",
            "1",
            "--mu3",
            "0",
        ],
    ];
    for args in cases {
        let out = qcorr(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?} should exit 2");
    }
}

#[test]
fn discord_examples_anchor_row() {
    let out = qcorr(&["discord", "examples", "--which", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let data = text.lines().nth(1).expect("one data row");
    assert!(data.starts_with("6.25000000e-1,"), "row: {data}");
}

#[test]
fn xx_sweep_field_equal_correlations() {
    let out = qcorr(&[
        "xx",
        "sweep-field",
        "--temp",
        "1.5",
        "--ratio",
        "1",
        "--b1-min",
        "-2",
        "--b1-max",
        "2",
        "--steps",
        "9",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines().skip_while(|l| l.starts_with('#')).skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols.len(), 4);
        assert!((cols[1] - cols[2]).abs() < 1e-6, "QD != CC in `{line}`");
    }
}

#[test]
fn state_file_round_trip_through_cli() {
    let dir = std::env::temp_dir().join(format!("qcorr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let state = dir.join("werner.txt");
    let rho = qcorr::discord::werner_state(2, -1.0).unwrap();
    std::fs::write(&state, qcorr::qstate::to_text(&rho)).unwrap();
    let out_file = dir.join("out.csv");
    let out = qcorr(&[
        "discord",
        "geometric",
        "--state-file",
        state.to_str().unwrap(),
        "--bruteforce",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_file).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "d_formula,d_lower_bound,d_bruteforce,g_1,g_2,g_3");
    let data: Vec<&str> = text
        .lines()
        .find(|l| l.starts_with("5.0"))
        .unwrap()
        .split(',')
        .collect();
    let d: f64 = data[0].parse().unwrap();
    assert!((d - 0.5).abs() < 1e-9, "Werner z=-1 discord {d}");
    let brute: f64 = data[2].parse().unwrap();
    assert!((d - brute).abs() < 1e-4);
    std::fs::remove_dir_all(&dir).ok();
}
