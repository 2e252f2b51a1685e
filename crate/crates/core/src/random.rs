//! Seeded random instance generators.
//!
//! Every generator is driven by ChaCha8 seeded through `seed_from_u64`; the
//! `stream` argument of [`rng`] separates independent trials drawn from one
//! seed, so results do not depend on how trials are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, DigraphBuilder};
use crate::graph::UndirectedGraph;

/// Identifier of the generator algorithm, recorded in run metadata.
pub const GENERATOR: &str = "chacha8";

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    random_tournament_with(n, &mut rng(seed, 0))
}

/// Orients each pair `{u, v}`, `u < v`, by a fair coin, pairs in lexicographic order.
pub fn random_tournament_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Digraph {
    let mut b = DigraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<bool>() {
                b.ensure_arc(u, v);
            } else {
                b.ensure_arc(v, u);
            }
        }
    }
    b.build()
}

pub fn random_orientation(g: &UndirectedGraph, seed: u64) -> Digraph {
    random_orientation_with(g, &mut rng(seed, 0))
}

pub fn random_orientation_with<R: Rng + ?Sized>(g: &UndirectedGraph, rng: &mut R) -> Digraph {
    let mut b = DigraphBuilder::new(g.n());
    for (u, v) in g.edges() {
        if rng.random::<bool>() {
            b.ensure_arc(u, v);
        } else {
            b.ensure_arc(v, u);
        }
    }
    b.build()
}

/// Vertices arrive in index order; each joins up to two earlier vertices
/// with independently random directions, so the result is 2-degenerate.
pub fn random_two_degenerate(n: usize, seed: u64) -> Digraph {
    random_two_degenerate_with(n, &mut rng(seed, 0))
}

pub fn random_two_degenerate_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Digraph {
    let mut b = DigraphBuilder::new(n);
    for v in 1..n {
        let count = rng.random_range(0..=2.min(v));
        let mut earlier: Vec<usize> = (0..v).collect();
        let (picked, _) = earlier.partial_shuffle(rng, count);
        for &u in picked.iter() {
            if rng.random::<bool>() {
                b.ensure_arc(u, v);
            } else {
                b.ensure_arc(v, u);
            }
        }
    }
    b.build()
}

/// A uniformly random-ish triangulation of the polygon `0, 1, ..., n-1`.
pub fn random_maximal_outerplanar(n: usize, seed: u64) -> UndirectedGraph {
    random_maximal_outerplanar_with(n, &mut rng(seed, 0))
}

pub fn random_maximal_outerplanar_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UndirectedGraph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if n >= 2 {
        edges.extend((1..n).map(|i| (i - 1, i)));
    }
    if n >= 3 {
        edges.push((0, n - 1));
        let mut pending = vec![(0..n).collect::<Vec<_>>()];
        while let Some(polygon) = pending.pop() {
            let len = polygon.len();
            if len <= 3 {
                continue;
            }
            let m = rng.random_range(1..len - 1);
            if m > 1 {
                edges.push((polygon[0], polygon[m]));
            }
            if m < len - 2 {
                edges.push((polygon[m], polygon[len - 1]));
            }
            pending.push(polygon[..=m].to_vec());
            pending.push(polygon[m..].to_vec());
        }
    }
    UndirectedGraph::from_edges(n, edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))))
        .expect("polygon triangulation is simple")
}

/// A tournament that admits an acyclic 2-dicolouring by construction: a
/// random 2-colouring, one random linear order for arcs inside classes and
/// another for arcs between them.
pub fn random_acyclic_two_colourable_tournament(n: usize, seed: u64) -> Digraph {
    random_acyclic_two_colourable_tournament_with(n, &mut rng(seed, 0))
}

pub fn random_acyclic_two_colourable_tournament_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Digraph {
    let side: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    let mut rank_in: Vec<usize> = (0..n).collect();
    let mut rank_across: Vec<usize> = (0..n).collect();
    rank_in.shuffle(rng);
    rank_across.shuffle(rng);
    let mut b = DigraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let rank = if side[u] == side[v] { &rank_in } else { &rank_across };
            if rank[u] < rank[v] {
                b.ensure_arc(u, v);
            } else {
                b.ensure_arc(v, u);
            }
        }
    }
    b.build()
}
