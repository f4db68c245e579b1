//! Cross-verification: predict each Sylow subgroup from the parameters
//! alone, compute the critical group exactly, and check they agree —
//! feeding the computed p-rank into the rank-parametrized predictions.
//!
//! Run with: cargo run --example verify

use sandpile_srg::graphs::{
    kneser, paley, petersen, rook, schlafli, shrikhande, triangular, Graph,
};
use sandpile_srg::group::critical_group;
use sandpile_srg::predict::{consistency_check, predict_all, Verdict};

fn verify(name: &str, graph: &Graph) {
    let params = graph.srg_parameters().unwrap();
    let group = critical_group(&graph.laplacian()).unwrap();
    let report = predict_all(&params, None).unwrap();
    println!("{name} = {params}: K = {group}");
    for (p, prediction) in &report.entries {
        let computed = group.sylow(*p).unwrap();
        let e0 = graph.laplacian().rank_mod_p(*p).unwrap() as u64;
        let verdict = match consistency_check(prediction, &computed, e0) {
            Verdict::Match => "match".to_string(),
            Verdict::MatchWithCase(label) => format!("match via case {label}"),
            Verdict::Mismatch(detail) => format!("MISMATCH ({detail})"),
        };
        println!("  p = {p}: e0 = {e0}, {verdict}");
    }
}

fn main() {
    verify("petersen", &petersen());
    verify("rook(4)", &rook(4).unwrap());
    verify("shrikhande", &shrikhande());
    verify("schlafli", &schlafli());
    verify("kneser(8,2)", &kneser(8, 2).unwrap());
    verify("paley(25)", &paley(25).unwrap());
    verify("paley(9)", &paley(9).unwrap());
    verify("triangular(7)", &triangular(7).unwrap());
    verify("complement(schlafli)", &schlafli().complement());
}
