//! The binary: exit codes, output format and determinism.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubic-modular"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin()
        .args(args)
        .env_remove("CUBIC_MODULAR_TOL")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn values(stdout: &str) -> Vec<(String, f64)> {
    stdout
        .lines()
        .skip(1)
        .map(|l| {
            let mut parts = l.split(',');
            (
                parts.next().unwrap().to_owned(),
                parts.next().unwrap().parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn verify_default_grid_exits_zero_and_is_stable() {
    let (code, first, _) = run(&["verify"]);
    assert_eq!(code, 0);
    assert!(first.starts_with("check_id,a,r,lhs,rhs,margin,pass\n"));
    assert!(!first.contains(",false"));
    let (_, second, _) = run(&["verify"]);
    assert_eq!(first, second);
}

#[test]
fn verify_with_impossible_slack_fails() {
    let (code, out, _) = run(&["verify", "--grid", "0.2:0.8:4", "--tol", "1e-300"]);
    assert_eq!(code, 1);
    assert!(out.contains(",false"));
}

#[test]
fn eval_fixed_point() {
    let (code, out, _) = run(&[
        "eval",
        "--mu-star",
        "--a",
        "0.3333333333333333",
        "--r",
        "0.36602540378443865",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("name,value,abs_error_estimate\n"));
    let v = values(&out);
    assert_eq!(v[0].0, "mu_star");
    assert!((v[0].1 - std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn eval_other_functions() {
    let (code, out, _) = run(&["eval", "--beta", "--x", "2", "--y", "3"]);
    assert_eq!(code, 0);
    assert!((values(&out)[0].1 - 1.0 / 12.0).abs() < 1e-15);
    let (_, out, _) = run(&["eval", "--phi3-closed", "--r", "0.5"]);
    let expected = (9.0 * 0.5 * 1.75f64).cbrt() / 2.0;
    assert!((values(&out)[0].1 - expected).abs() < 1e-15);
    let (_, out, _) = run(&["eval", "--kummer", "--p", "0.5", "--q", "0.5", "--x", "0.3"]);
    assert!((values(&out)[0].1 - 0.3f64.exp()).abs() < 1e-13);
}

#[test]
fn sweep_bounds_hold_in_every_row() {
    let (code, out, _) = run(&["sweep", "--a", "0.2", "--grid", "0.05:0.95:19"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "a,r,mu_star,lower,upper,log_shifted,derivative"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 19);
    for row in rows {
        assert!(row[3] <= row[2] && row[2] <= row[4], "{row:?}");
        assert!(row[6] < 0.0);
    }
}

#[test]
fn other_commands() {
    let (code, out, _) = run(&[
        "invert",
        "--a",
        "0.3333333333333333",
        "--y",
        "3.141592653589793",
    ]);
    assert_eq!(code, 0);
    assert!((values(&out)[0].1 - (3f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
    let (code, out, _) = run(&["orbit", "--r", "0.5", "--n", "3"]);
    assert_eq!(code, 0);
    let v = values(&out);
    assert_eq!(v.len(), 6);
    assert!((v[0].1 - 0.875f64.cbrt()).abs() < 1e-15);
    let (code, out, _) = run(&["agm", "--x", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!(values(&out).len(), 4);
    let (code, out, _) = run(&["product", "--r", "0.5", "--a", "0.2", "--K", "2"]);
    assert_eq!(code, 0);
    let v = values(&out);
    assert_eq!(
        v.iter().map(|p| p.0.as_str()).collect::<Vec<_>>(),
        ["mu_star_product", "lower", "upper", "phi_inv_lower_bound"]
    );
}

#[test]
fn usage_and_domain_errors_exit_two() {
    assert_eq!(run(&["eval", "--a", "0.7"]).0, 2);
    assert_eq!(run(&["eval", "--unknown-flag"]).0, 2);
    assert_eq!(run(&["eval", "--gamma"]).0, 2);
    assert_eq!(run(&["eval", "--gamma", "--x", "-1"]).0, 2);
    assert_eq!(run(&["invert", "--a", "0.3", "--y", "1000"]).0, 2);
    assert_eq!(run(&["sweep", "--a", "0.2", "--grid", "0:1:5"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn help_documents_sweep_columns() {
    let (code, out, _) = run(&["sweep", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("log_shifted") && out.contains("derivative"));
}

#[test]
fn output_file_and_environment_tolerance() {
    let path = std::env::temp_dir().join(format!("cubic-modular-{}.csv", std::process::id()));
    let (code, stdout, _) = run(&[
        "eval",
        "--complement",
        "--r",
        "0.2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("name,value,abs_error_estimate\ncomplement,"));

    let out = bin()
        .args(["product", "--r", "0.5"])
        .env("CUBIC_MODULAR_TOL", "1e-3")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .ends_with(",1.0000000000000000e-3"));
}
