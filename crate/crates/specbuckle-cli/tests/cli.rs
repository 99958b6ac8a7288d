//! End-to-end checks of the binary: exit codes, output formats, byte-level
//! determinism, and the documented example invocations.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specbuckle"))
        .args(args)
        .env_remove("SPECBUCKLE_THREADS")
        .output()
        .expect("binary should spawn")
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specbuckle"))
        .args(args)
        .env("SPECBUCKLE_THREADS", threads)
        .output()
        .expect("binary should spawn")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal expected")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be utf-8")
}

fn parse_json(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(output)).expect("stdout should be valid json")
}

#[test]
fn spectrum_ball_starts_at_the_lowest_buckling_value() {
    let out = run(&[
        "spectrum", "--domain", "ball", "--dim", "3", "--kind", "buckling", "--z-max", "100",
        "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,kind,l,n,value,multiplicity"));
    let first: Vec<&str> = lines.next().expect("at least one mode").split(',').collect();
    assert_eq!(&first[..4], &["3", "buckling", "0", "1"]);
    let value: f64 = first[4].parse().unwrap();
    assert!((value - 20.190728556426).abs() < 1e-9, "got {value}");
    assert_eq!(first[5], "1");

    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]), "unsorted table");
    assert!(values.iter().all(|&v| v < 100.0));
}

#[test]
fn verify_interval_passes_and_reports_every_check() {
    let out = run(&["verify", "--domain", "interval", "--length", "1", "--jmax", "500"]);
    assert_eq!(exit_code(&out), 0);
    let report = parse_json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["command"], "verify");
    assert_eq!(report["domain"], "interval");
    assert_eq!(report["failures"], 0);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), report["total"].as_u64().unwrap() as usize);
    assert!(checks.len() > 1500, "battery too small: {}", checks.len());
    for check in checks {
        assert_eq!(check["pass"], true, "failing check: {check}");
        assert!(check["lhs"].is_f64() && check["rhs"].is_f64() && check["margin"].is_f64());
        assert!(check["params"].is_object());
    }
    let names: std::collections::BTreeSet<&str> = checks
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for expected in [
        "riesz1_upper",
        "sum_lower",
        "legendre_dual_lower",
        "sqrt_bilaplacian_chain",
        "averaged_variational_corollaries",
        "phi_averaged_lower",
        "bilaplacian_riesz1_interval_upper",
    ] {
        assert!(names.contains(expected), "missing {expected}");
    }
}

#[test]
fn verify_ball_passes_and_covers_the_counting_identity() {
    let out = run(&["verify", "--domain", "ball", "--dim", "3", "--z-max", "2000"]);
    assert_eq!(exit_code(&out), 0);
    let report = parse_json(&out);
    assert_eq!(report["failures"], 0);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"counting_identity_gap"));
    assert!(names.contains(&"second_laplacian_below_first_buckling"));
}

#[test]
fn weyl_window_flag_gates_the_exit_code() {
    let tight = run(&[
        "verify", "--domain", "ball", "--dim", "2", "--z-max", "2000", "--weyl-window", "1e-6",
    ]);
    assert_eq!(exit_code(&tight), 1);
    let report = parse_json(&tight);
    assert_eq!(report["failures"], 1);
    let failing: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["weyl_window"]);

    let loose = run(&[
        "verify", "--domain", "ball", "--dim", "2", "--z-max", "2000", "--weyl-window", "0.5",
    ]);
    assert_eq!(exit_code(&loose), 0);
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["spectrum", "--domain", "ball", "--kind", "bilaplacian", "--z-max", "100"],
        &["spectrum", "--domain", "ball", "--dim", "2"],
        &["spectrum", "--domain", "ball", "--dim", "2", "--z-max", "100", "--length", "2"],
        &["spectrum", "--domain", "interval", "--z-max", "100"],
        &["counting", "--domain", "interval", "--no-such-flag"],
        &["avp", "--format", "plotdata"],
        &["verify", "--domain", "interval", "--j-max", "10", "--format", "csv"],
        &["asymptotics", "--domain", "interval", "--kind", "bilaplacian", "--j-max", "10"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(exit_code(&out), 2, "args {args:?} should be a usage error");
        assert!(!out.stderr.is_empty(), "args {args:?} should explain itself");
    }
    let bad_env = run_with_threads(&["avp", "--n-models", "1", "--dim", "4", "--n-trials", "3"], "zero");
    assert_eq!(exit_code(&bad_env), 2);
}

#[test]
fn output_bytes_are_identical_across_runs_and_thread_caps() {
    let avp_args = &[
        "avp", "--seed", "42", "--dim", "16", "--n-models", "40", "--n-trials", "10",
    ];
    let first = run(avp_args);
    let second = run(avp_args);
    let capped = run_with_threads(avp_args, "1");
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, capped.stdout);

    let spectrum_args = &[
        "spectrum", "--domain", "ball", "--dim", "2", "--z-max", "400", "--format", "csv",
    ];
    let a = run(spectrum_args);
    let b = run_with_threads(spectrum_args, "2");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn counting_grid_is_monotone_and_sized() {
    let out = run(&["counting", "--domain", "interval", "--j-max", "60"]);
    assert_eq!(exit_code(&out), 0);
    let report = parse_json(&out);
    assert_eq!(report["schema"], 1);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 129);
    let counts: Vec<u64> = rows.iter().map(|r| r["N"].as_u64().unwrap()).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(*counts.last().unwrap(), 59);
}

#[test]
fn riesz_plotdata_is_two_monotone_columns() {
    let out = run(&[
        "riesz", "--domain", "interval", "--j-max", "50", "--p", "2", "--format", "plotdata",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let rows: Vec<(f64, f64)> = text
        .lines()
        .map(|line| {
            let mut fields = line.split_whitespace();
            let z: f64 = fields.next().unwrap().parse().unwrap();
            let v: f64 = fields.next().unwrap().parse().unwrap();
            assert!(fields.next().is_none(), "expected two columns: {line}");
            (z, v)
        })
        .collect();
    assert_eq!(rows.len(), 129);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1));
}

#[test]
fn asymptotics_interval_recovers_the_boundary_term() {
    let out = run(&[
        "asymptotics", "--domain", "interval", "--j-max", "2000", "--windows", "8",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report = parse_json(&out);
    assert_eq!(report["schema"], 1);
    let fit = &report["fit"];
    let c0 = fit["c0"].as_f64().unwrap();
    assert!((c0 - 1.0 / std::f64::consts::PI).abs() < 1e-15);
    let c1_hat = fit["c1_hat"].as_f64().unwrap();
    assert!(
        (c1_hat + 1.5).abs() < 0.15,
        "interval boundary coefficient is -3/2, fit gave {c1_hat}"
    );
    assert_eq!(report["model"]["boundary_c1"].as_f64().unwrap(), 1.5);
    for row in report["rows"].as_array().unwrap() {
        let n = row["N"].as_u64().unwrap() as f64;
        let n_model = row["N_model"].as_f64().unwrap();
        let remainder = row["remainder"].as_f64().unwrap();
        assert!((remainder - (n - n_model)).abs() < 1e-12);
    }
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let path = std::env::temp_dir().join(format!("specbuckle_cli_{}.json", std::process::id()));
    let out = run(&[
        "verify", "--domain", "interval", "--j-max", "40", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).expect("report file should exist");
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["failures"], 0);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn avp_csv_is_a_single_summary_row() {
    let out = run(&[
        "avp", "--seed", "9", "--dim", "12", "--n-models", "25", "--n-trials", "8", "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "models,checks,failures,worst_margin");
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "25");
    assert_eq!(fields[1], "75");
    assert_eq!(fields[2], "0");
    let worst: f64 = fields[3].parse().unwrap();
    assert!(worst.is_finite() && worst >= -1e-9);
}
