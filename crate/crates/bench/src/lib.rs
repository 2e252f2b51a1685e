//! Fixed, seeded instances shared by the benchmarks.

use adicol::constructions::{gap_tournament, rotational_rn, vertex_split};
use adicol::random::{random_acyclic_two_colourable_tournament, random_tournament, random_two_degenerate};
use adicol::{Digraph, UndirectedGraph};

pub const SEED: u64 = 0x5eed;

/// Tournaments that pass the lightness gate and admit an acyclic 2-dicolouring.
pub fn two_colourable_tournaments(n: usize, count: usize) -> Vec<Digraph> {
    (0..count as u64).map(|i| random_acyclic_two_colourable_tournament(n, SEED + i)).collect()
}

pub fn tournaments(n: usize, count: usize) -> Vec<Digraph> {
    (0..count as u64).map(|i| random_tournament(n, SEED + i)).collect()
}

pub fn two_degenerate(n: usize, count: usize) -> Vec<Digraph> {
    (0..count as u64).map(|i| random_two_degenerate(n, SEED + i)).collect()
}

/// Named instances for the exact solver.
pub fn solver_instances() -> Vec<(&'static str, Digraph)> {
    vec![
        ("D(K4)", vertex_split(&UndirectedGraph::complete(4)).digraph),
        ("D(K5)", vertex_split(&UndirectedGraph::complete(5)).digraph),
        ("R9", rotational_rn(9).expect("odd")),
        ("gap(2)", gap_tournament(2).expect("k >= 1").digraph),
    ]
}
