//! Sylow subgroup predictions straight from the parameters, for graphs
//! nobody has ever constructed.
//!
//! Run with: cargo run --example predict

use sandpile_srg::predict::{predict_all, predict_prime};
use sandpile_srg::srg::SrgParams;

fn main() {
    // Whether an srg(99,14,1,2) exists is a famous open question, but
    // its critical group is fully determined: the two eigenvalues are
    // coprime, so every prime lands in the forced case.
    let conway = SrgParams::new(99, 14, 1, 2).unwrap();
    let report = predict_all(&conway, None).unwrap();
    println!("{conway} (existence open):");
    for (p, prediction) in &report.entries {
        println!("  K_{p} = {}", prediction.render());
    }

    // srg(190,84,33,40): the Sylow 2-subgroup is forced even though the
    // graph is unknown.
    let unknown = SrgParams::new(190, 84, 33, 40).unwrap();
    let at2 = predict_prime(&unknown, 2, None).unwrap();
    println!("{unknown}: K_2 = {}", at2.render());

    // srg(88,27,6,9): primes 2 and 11 are forced; the 3-part is a
    // one-parameter family in the 3-rank e0.
    let mystery = SrgParams::new(88, 27, 6, 9).unwrap();
    println!("{mystery}:");
    for (p, prediction) in &predict_all(&mystery, None).unwrap().entries {
        println!("  K_{p}: {}", prediction.render());
    }
    // ... and pinning e0 collapses the family to a single group:
    let at_e0_40 = predict_prime(&mystery, 3, Some(40)).unwrap();
    println!("  K_3 at e0 = 40: {}", at_e0_40.render());

    // The missing Moore graph srg(3250,57,0,1): at p = 5 the p-rank
    // determines the group only up to two candidate families.
    let moore = SrgParams::new(3250, 57, 0, 1).unwrap();
    let at5 = predict_prime(&moore, 5, None).unwrap();
    println!("{moore}:");
    println!("  K_5: {}", at5.render());
}
