//! Criterion 10: the CLI `selftest` runs criteria 1-9 and exits 0, repeated
//! sweeps are bit-identical, and the whole battery stays under two minutes.
//! The child's per-criterion lines are relayed so the full 1-10 report
//! appears in one place.

use std::process::Command;
use std::time::Instant;

#[test]
fn criterion_10_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_thermofun");
    let started = Instant::now();
    let selftest = Command::new(bin).arg("selftest").output().expect("selftest runs");
    let sweep_args = [
        "sweep", "i1", "--range", "z=0.1:10:8:log", "--range", "nu=1.5:2.5:3", "--format", "csv",
    ];
    let sweep_a = Command::new(bin).args(sweep_args).output().expect("sweep runs");
    let sweep_b = Command::new(bin).args(sweep_args).output().expect("sweep runs");
    let elapsed = started.elapsed();

    print!("{}", String::from_utf8_lossy(&selftest.stdout));
    let selftest_ok = selftest.status.code() == Some(0);
    let sweeps_identical = sweep_a.stdout == sweep_b.stdout && sweep_a.status.code() == Some(0);
    let in_budget = elapsed.as_secs_f64() < 120.0;
    let pass = selftest_ok && sweeps_identical && in_budget;
    println!(
        "criterion 10 [{}] CLI determinism — selftest exit {:?}, sweeps identical {}, {:.1}s",
        if pass { "pass" } else { "FAIL" },
        selftest.status.code(),
        sweeps_identical,
        elapsed.as_secs_f64()
    );
    assert!(pass);
}
