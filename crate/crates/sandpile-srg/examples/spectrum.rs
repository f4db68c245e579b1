//! Parameter arithmetic: from a quadruple (v, k, lambda, mu) to the
//! Laplacian spectrum, critical-group order, exponent bound, and the
//! feasibility screen — no graph is ever built.
//!
//! Run with: cargo run --example spectrum

use sandpile_srg::srg::{validate_params, LaplacianSpectrum, SrgParams};

fn main() {
    // The integral case: every number below is exact.
    for (v, k, lambda, mu) in [(10, 3, 0, 1), (16, 6, 2, 2), (99, 14, 1, 2)] {
        let params = SrgParams::new(v, k, lambda, mu).unwrap();
        let spectrum = params.spectrum().unwrap();
        let spec = spectrum.integral().unwrap();
        println!("{params}");
        println!(
            "  nonzero Laplacian eigenvalues: {}^{} and {}^{}",
            spec.r, spec.f, spec.s, spec.g
        );
        println!(
            "  spanning trees / |K|: {}",
            spec.critical_group_order(v).unwrap()
        );
        println!("  exponent bound r*s = mu*v = {}", spec.exponent_bound());
    }

    // The pentagon is a conference graph: the eigenvalues are irrational
    // and the structure machinery refuses to guess.
    let pentagon = SrgParams::new(5, 2, 0, 1).unwrap();
    match pentagon.spectrum().unwrap() {
        LaplacianSpectrum::Conference { multiplicity } => {
            println!("{pentagon}: conference graph, multiplicities {multiplicity} each")
        }
        LaplacianSpectrum::Integral(_) => unreachable!(),
    }

    // The feasibility screen accepts raw integers and reports rather
    // than erroring; (28,9,0,4) passes the counting identity but fails
    // the absolute bound.
    let report = validate_params(28, 9, 0, 4);
    println!("(28,9,0,4) absolute bound ok: {}", report.absolute_bound_ok);
    for note in &report.notes {
        println!("  note: {note}");
    }

    // Complement parameters come from pure arithmetic as well.
    let schlafli = SrgParams::new(27, 10, 1, 5).unwrap().complement().unwrap();
    println!("complement of srg(27,10,1,5) = {schlafli}");
}
