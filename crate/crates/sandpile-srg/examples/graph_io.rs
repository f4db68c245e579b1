//! Graph ingestion: graph6 strings, adjacency-matrix text, and the
//! bundled fixtures, flowing into the same exact pipeline.
//!
//! Run with: cargo run --example graph_io

use sandpile_srg::data::{srg_25_first, srg_28_switched};
use sandpile_srg::formats::{parse_graph6, to_graph6};
use sandpile_srg::graphs::petersen;
use sandpile_srg::group::critical_group;

fn main() {
    // graph6 round trip: "C~" is the complete graph on 4 vertices.
    let k4 = parse_graph6("C~").unwrap();
    println!(
        "C~ decodes to {} vertices, {} edges",
        k4.n(),
        k4.edge_count()
    );
    let petersen_g6 = to_graph6(&petersen());
    println!("petersen encodes as {petersen_g6}");
    assert_eq!(parse_graph6(&petersen_g6).unwrap(), petersen());

    // The bundled srg(25,12,5,6) adjacency matrix: same parameters as
    // paley(25) but a different critical group.
    let g25 = srg_25_first();
    let params = g25.srg_parameters().unwrap();
    let k = critical_group(&g25.laplacian()).unwrap();
    println!("bundled 25-vertex fixture: {params}");
    println!("  K_5 = {}", k.sylow(5).unwrap());
    println!("  5-rank = {}", g25.laplacian().rank_mod_p(5).unwrap());

    // The bundled srg(28,12,6,4) that is not the triangular graph T(8);
    // its complement realizes the second candidate family at p = 2.
    let g28 = srg_28_switched();
    let comp = g28.complement();
    let k2 = critical_group(&comp.laplacian()).unwrap().sylow(2).unwrap();
    println!(
        "bundled 28-vertex fixture: {}; complement K_2 = {k2}",
        g28.srg_parameters().unwrap()
    );
}
