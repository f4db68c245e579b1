//! An arithmetic proof that no srg(28,9,0,4) exists: the forced 7-rank
//! leaves a 6-dimensional kernel, but counting around any edge produces
//! 7 independent kernel vectors.
//!
//! Run with: cargo run --example nonexistence

use sandpile_srg::predict::nonexistence_28_report;

fn main() {
    let report = nonexistence_28_report();
    for line in report.lines() {
        println!("{line}");
    }
    assert!(report.contradiction);
}
