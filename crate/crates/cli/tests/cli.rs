use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

fn fracwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracwave"))
        .args(args)
        .env_remove("FRACWAVE_EPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "status {:?}, stderr: {}",
        o.status,
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Header and numeric rows of a CSV document.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn eval_diffusion_origin() {
    let (header, rows) = parse_csv(&stdout(&fracwave(&[
        "eval", "--nu", "0.5", "--x", "0", "--t", "1",
    ])));
    assert_eq!(header, ["nu", "x", "t", "G", "abs_err"]);
    let g = rows[0][column(&header, "G")];
    assert!((g - 0.5 / PI.sqrt()).abs() <= 1e-12);
}

#[test]
fn eval_fractional_origin() {
    // 1/(2Γ(1/4))
    let expected = 0.5 / 3.625_609_908_221_908;
    let (header, rows) = parse_csv(&stdout(&fracwave(&[
        "eval", "--nu", "0.75", "--x", "0", "--t", "1",
    ])));
    let g = rows[0][column(&header, "G")];
    let err = rows[0][column(&header, "abs_err")];
    assert!(err <= 1e-10);
    assert!((g - expected).abs() <= 1e-10, "{g}");
}

#[test]
fn eval_wave_endpoint_is_a_domain_error() {
    let o = fracwave(&["eval", "--nu", "1.0", "--x", "1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wave endpoint is analytic (delta)"));
    assert!(o.stdout.is_empty());
}

#[test]
fn numbers_use_c_style_exponents() {
    let text = stdout(&fracwave(&["eval", "--nu", "0.5", "--x", "0", "--t", "1"]));
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with(
        "5.000000000000e-01,0.000000000000e+00,1.000000000000e+00,2.820947917739e-01,"
    ));
    assert!(!text.contains('\r'));
}

#[test]
fn profile_matches_gaussian() {
    let (header, rows) = parse_csv(&stdout(&fracwave(&[
        "profile", "--nu", "0.5", "--t", "1", "--x-to", "3", "--steps", "4",
    ])));
    assert_eq!(header, ["nu", "t", "x", "G", "abs_err"]);
    assert_eq!(rows.len(), 4);
    for row in rows {
        let x = row[2];
        let exact = (-x * x / 4.0).exp() / (2.0 * PI.sqrt());
        assert!((row[3] - exact).abs() <= 1e-12, "x = {x}");
    }
}

#[test]
fn coefficient_curve_peaks_near_expected_order() {
    let (header, rows) = parse_csv(&stdout(&fracwave(&[
        "coeff-curve",
        "--nu-from",
        "0.5",
        "--nu-to",
        "0.99",
        "--steps",
        "50",
    ])));
    assert_eq!(&header[..3], ["nu", "c", "m"]);
    assert_eq!(rows.len(), 50);
    let peak = rows.iter().max_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert!((peak[0] - 0.85).abs() <= 0.02, "{peak:?}");
    assert!((peak[1] - 1.28).abs() <= 0.02, "{peak:?}");
    assert_eq!(rows[0][1], 0.0);
}

#[test]
fn product_stays_in_range() {
    let (header, rows) = parse_csv(&stdout(&fracwave(&[
        "product",
        "--nu-from",
        "0.56",
        "--nu-to",
        "0.99",
    ])));
    let p = column(&header, "product");
    for row in &rows[1..] {
        assert!(row[p] > 0.1 && row[p] < 10.0, "{row:?}");
    }
    assert!(rows.iter().all(|r| r[column(&header, "abs_err")] >= 0.0));
}

#[test]
fn speed_decreases_and_wave_speed_is_one() {
    let (header, rows) = parse_csv(&stdout(&fracwave(&[
        "speed",
        "--nu",
        "0.7",
        "1",
        "--t-from",
        "0.01",
        "--t-to",
        "100",
        "--t-steps",
        "9",
        "--spacing",
        "log",
    ])));
    let v = column(&header, "speed");
    let (frac, wave) = rows.split_at(9);
    assert!(frac.windows(2).all(|w| w[0][v] > w[1][v]));
    assert!(wave.iter().all(|r| r[v] == 1.0));
}

#[test]
fn hyperbola_product_is_constant() {
    let (header, rows) = parse_csv(&stdout(&fracwave(&[
        "hyperbola",
        "--nu",
        "0.8",
        "--t-from",
        "0.5",
        "--t-to",
        "50",
        "--t-steps",
        "5",
    ])));
    let (x, g) = (column(&header, "x"), column(&header, "G"));
    let first = rows[0][x] * rows[0][g];
    for row in &rows {
        assert!((row[x] * row[g] - first).abs() <= 1e-9 * first);
    }
}

#[test]
fn surface_covers_the_grid() {
    let (_, rows) = parse_csv(&stdout(&fracwave(&[
        "surface",
        "--nu",
        "0.6",
        "--t-steps",
        "3",
        "--x-steps",
        "5",
    ])));
    assert_eq!(rows.len(), 15);
    assert_eq!(rows[14][1], 2.0);
    assert_eq!(rows[14][2], 3.0);
}

#[test]
fn json_envelope_carries_config_and_errors() {
    let text = stdout(&fracwave(&[
        "profile", "--nu", "0.7", "--steps", "3", "--format", "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["command"]["name"], "profile");
    assert_eq!(v["meta"]["eps"], 1e-10);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["abs_err"].as_f64().unwrap() <= 1e-10));
}

#[test]
fn files_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = fracwave(&[
            "surface",
            "--nu",
            "0.55",
            "0.9",
            "--x-steps",
            "7",
            "-o",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn failed_sweep_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = fracwave(&[
        "coeff-curve",
        "--nu-from",
        "0.9",
        "--nu-to",
        "0.999",
        "--steps",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(fracwave(&["eval", "--nu", "0.7"]).status.code(), Some(1));
    assert_eq!(fracwave(&["nonsense"]).status.code(), Some(1));
    assert_eq!(
        fracwave(&["profile", "--nu", "0.7", "--steps", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        fracwave(&["profile", "--nu", "0.7", "--x-from", "2", "--x-to", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(fracwave(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_two() {
    let o = fracwave(&["eval", "--nu", "0.4", "--x", "0", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fracwave(&["eval", "--nu", "0.7", "--x", "0", "--t=-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn environment_sets_accuracy() {
    let run = |eps: &str| {
        Command::new(env!("CARGO_BIN_EXE_fracwave"))
            .args([
                "eval", "--nu", "0.7", "--x", "1", "--t", "1", "--format", "json",
            ])
            .env("FRACWAVE_EPS", eps)
            .output()
            .unwrap()
    };
    let v: serde_json::Value = serde_json::from_str(&stdout(&run("1e-6"))).unwrap();
    assert_eq!(v["meta"]["eps"], 1e-6);
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(run("not-a-number").status.code(), Some(1));
}
