//! Runs the full acceptance battery, printing one line per criterion.

use thermofun::acceptance;

#[test]
fn acceptance_criteria() {
    let reports = acceptance::run_all();
    let mut all_pass = true;
    for r in &reports {
        let status = if r.pass { "pass" } else { "FAIL" };
        if r.detail.is_empty() {
            println!("criterion {:>2} [{status}] {}", r.id, r.name);
        } else {
            println!("criterion {:>2} [{status}] {} — {}", r.id, r.name, r.detail);
        }
        all_pass &= r.pass;
    }
    assert!(all_pass, "one or more acceptance criteria failed");
}
