//! The thirteen acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p costas --test acceptance -- --nocapture`.

use costas::suite::{run_criterion, SuiteOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let opts = SuiteOptions::default();
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let o = run_criterion(id, &opts);
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!("{mark} {:02} {}: {}", o.id, o.name, o.detail);
        if !o.pass {
            failed.push(o.name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
