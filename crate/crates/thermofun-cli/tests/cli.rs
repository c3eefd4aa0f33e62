//! End-to-end tests of the `thermofun` binary: exit codes, output schemas,
//! and sweep determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermofun"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn eval_oracle_json_record() {
    let out = run(&["eval", "i1", "--z", "1", "--nu", "2", "--mode", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"family\":\"i1\""));
    assert!(text.contains("\"converged\":true"));
    assert!(text.contains("\"wall_time_ms\""));
    // 17-significant-digit value round-trips to the oracle fixture
    let value: f64 = text
        .split("\"value\":")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 0.44317272727711943).abs() < 1e-12);
}

#[test]
fn eval_domain_error_exits_3() {
    let out = run(&["eval", "i1", "--z", "0", "--nu", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn eval_crosscheck_exits_0() {
    let out = run(&[
        "eval", "i2", "--z", "1", "--d", "2", "--nu", "2", "--mode", "crosscheck", "--rtol", "1e-8",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn eval_missing_parameter_exits_64() {
    let out = run(&["eval", "i2", "--z", "1", "--nu", "2"]);
    assert_eq!(out.status.code(), Some(64));
    let out = run(&["eval", "unknown-family", "--z", "1"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn csv_header_is_stable() {
    let out = run(&["eval", "i1", "--z", "1", "--nu", "2", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "family,nu,z,d,t,mu,b,delta,rho,a,q,value,abs_err,method,work,converged"
    );
}

#[test]
fn sweep_row_count_and_determinism() {
    let args = [
        "sweep", "i1", "--range", "z=0.1:10:8:log", "--range", "nu=1.5:2.5:3", "--format", "csv",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 25); // header + 8 * 3 rows
    let second = run(&args);
    // bit-identical reruns: no timestamps or wall time inside sweep rows
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn sweep_csv_and_json_agree() {
    let args = ["sweep", "i1", "--range", "z=0.5:2:3", "--nu", "2"];
    let json = stdout(&run(&args.iter().chain(&["--format", "json"]).copied().collect::<Vec<_>>()));
    let csv = stdout(&run(&args.iter().chain(&["--format", "csv"]).copied().collect::<Vec<_>>()));
    let json_values: Vec<&str> = json
        .lines()
        .map(|l| {
            l.split("\"value\":")
                .nth(1)
                .unwrap()
                .split(',')
                .next()
                .unwrap()
        })
        .collect();
    let csv_values: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(11).unwrap())
        .collect();
    assert_eq!(json_values, csv_values);
}

#[test]
fn sweep_divergent_rows_keep_oracle_values() {
    // b/z >= 1 sits outside the binomial regime of the I4 series; crosscheck
    // rows must carry the DivergentSeries marker with the oracle value filled
    let out = run(&[
        "sweep", "i4", "--range", "z=0.5:1:2", "--b", "2", "--delta", "1", "--nu", "2", "--mode",
        "crosscheck", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[13], "DivergentSeries");
        assert_eq!(fields[15], "false");
        let value: f64 = fields[11].parse().expect("oracle value present");
        assert!(value.is_finite() && value > 0.0);
    }
}

#[test]
fn sweep_config_file_with_flag_override() {
    let dir = std::env::temp_dir().join("thermofun-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.conf");
    std::fs::write(
        &path,
        "family = i1\nz = 0.5:2:3 # three points\nnu = 5\nformat = csv\n",
    )
    .unwrap();
    let base = run(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(stdout(&base).lines().count(), 4);
    // flag overrides the config's nu=5
    let over = run(&["sweep", "--config", path.to_str().unwrap(), "--nu", "2"]);
    let text = stdout(&over);
    assert!(text.contains("2.0000000000000000e0,5.0000000000000000e-1"));
    assert!(!text.contains("5.0000000000000000e0,"));
}

#[test]
fn qdemo_q1_matches_i1() {
    let out = run(&[
        "qdemo", "--q", "1", "--nu", "2", "--z-start", "0.5", "--z-stop", "2", "--count", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let rate: f64 = fields[1].parse().unwrap();
        let classical: f64 = fields[2].parse().unwrap();
        assert!((rate - classical).abs() <= 1e-10 * classical.abs());
    }
}
