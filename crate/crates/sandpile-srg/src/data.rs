//! Bundled data files: the feasible-parameter table and two adjacency
//! fixtures that cannot be generated from first principles here.

use crate::formats::{parse_adjacency_text, parse_parameter_table, TableRow};
use crate::graphs::Graph;

/// Feasible strongly-regular-graph parameter sets with integer Laplacian
/// spectrum, for fewer than 200 vertices. Columns: `v k lambda mu r f s g`.
pub const FEASIBLE_PARAMS: &str = include_str!("../data/feasible_params.txt");

/// Adjacency matrix of the first of the fifteen srg(25,12,5,6) graphs.
pub const SRG_25_12_5_6_NR1: &str = include_str!("../data/srg_25_12_5_6_nr1.txt");

/// Adjacency matrix of an srg(28,12,6,4) that is not the triangular
/// graph T(8), obtained from T(8) by Seidel switching.
pub const SRG_28_12_6_4_SWITCHED: &str = include_str!("../data/srg_28_12_6_4_switched.txt");

pub fn feasible_params() -> Vec<TableRow> {
    parse_parameter_table(FEASIBLE_PARAMS).expect("bundled parameter table parses")
}

pub fn srg_25_first() -> Graph {
    parse_adjacency_text(SRG_25_12_5_6_NR1).expect("bundled 25-vertex fixture parses")
}

pub fn srg_28_switched() -> Graph {
    parse_adjacency_text(SRG_28_12_6_4_SWITCHED).expect("bundled 28-vertex fixture parses")
}
