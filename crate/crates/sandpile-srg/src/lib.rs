//! Critical (sandpile) groups of graphs, computed exactly, together with
//! parameter-level predictions of their Sylow subgroups for strongly
//! regular graphs.
//!
//! The crate has two halves that check each other:
//!
//! * a direct pipeline — build a graph, take its Laplacian, compute the
//!   Smith normal form over the integers, and read off the critical group
//!   ([`graphs`], [`matrix`], [`group`]);
//! * an arithmetic pipeline — from the parameter set `(v, k, lambda, mu)`
//!   of a strongly regular graph alone, derive the Laplacian spectrum and
//!   predict the Sylow `p`-subgroups of the critical group, exactly where
//!   the valuations allow it and as a rank-parametrized family or
//!   constraint system otherwise ([`srg`], [`predict`]).
//!
//! Run `cargo run --example compute` (or any of the other examples) for a
//! tour, or use the `sandpile-srg` binary for the same functionality from
//! the command line.

pub mod arith;
pub mod cli;
pub mod data;
pub mod formats;
pub mod graphs;
pub mod group;
pub mod matrix;
pub mod predict;
pub mod srg;

pub use graphs::Graph;
pub use group::AbelianGroup;
pub use matrix::{IntMatrix, SmithNormalForm};
pub use srg::{LaplacianSpectrum, SrgParams};
