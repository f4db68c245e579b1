//! Batch scan of the bundled feasible-parameter table: recompute every
//! spectrum, screen feasibility, and classify the per-prime predictions.
//!
//! Run with: cargo run --example scan

use sandpile_srg::data::feasible_params;
use sandpile_srg::predict::{predict_all, SylowPrediction};
use sandpile_srg::srg::{validate_params, SrgParams};

fn main() {
    let rows = feasible_params();
    let mut mismatches = 0usize;
    let mut bound_failures = Vec::new();
    let mut exact = 0usize;
    let mut by_rank = 0usize;
    let mut constraints = 0usize;

    for row in &rows {
        let params = SrgParams::new(row.v, row.k, row.lambda, row.mu).unwrap();
        let spec = params.spectrum().unwrap();
        let spec = spec.integral().unwrap();
        if row.spectrum != Some((spec.r, spec.f, spec.s, spec.g)) {
            mismatches += 1;
        }
        if !validate_params(row.v, row.k, row.lambda, row.mu).absolute_bound_ok {
            bound_failures.push(params);
        }
        for (_, prediction) in predict_all(&params, None).unwrap().entries {
            match prediction {
                SylowPrediction::Exact(_) => exact += 1,
                SylowPrediction::RankParametrized(_) => by_rank += 1,
                SylowPrediction::ConstraintsOnly(_) => constraints += 1,
                SylowPrediction::NotApplicable(_) => {}
            }
        }
    }

    println!(
        "{} rows scanned, {mismatches} spectrum mismatches",
        rows.len()
    );
    println!("per-prime predictions: {exact} exact, {by_rank} rank-parametrized, {constraints} constraints-only");
    println!("{} rows fail the absolute bound:", bound_failures.len());
    for params in bound_failures.iter().take(6) {
        println!("  {params}");
    }
    println!("  ...");
}
