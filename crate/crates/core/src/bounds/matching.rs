//! Greedy acyclic matchings in tournaments and the colourings they give.

use crate::dicolour::{verify_acyclic_dicolouring, verify_acyclic_matching, AcyclicMatching, Colouring};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Builds an acyclic matching of size at least `f(n)`.
///
/// With `R` the remaining vertices: take `v` of minimum in-degree in `T[R]`.
/// If `v` is a source in `T[R]`, match it with its first out-neighbour.
/// Otherwise take `u` of minimum out-degree inside `T[N-(v) ∩ R]`, match
/// `uv`, and discard `X = N+(u) ∩ N-(v) ∩ R`, which has at most
/// `(|R| - 3) / 4` vertices. Ties go to the lowest index.
pub fn greedy_acyclic_matching(t: &Digraph) -> Result<AcyclicMatching> {
    t.ensure_tournament()?;
    let n = t.n();
    let mut rest = VertexSet::full(n);
    let mut arcs = Vec::new();
    while rest.len() >= 2 {
        let r = rest.len();
        let indeg = |v: usize, within: &VertexSet| t.in_neighbours(v).intersection_len(within);
        let v = rest.iter().min_by_key(|&v| (indeg(v, &rest), v)).expect("non-empty");
        let before = t.in_neighbours(v) & &rest;
        if before.is_empty() {
            let w = (t.out_neighbours(v) & &rest)
                .first()
                .expect("a source in a tournament on 2+ vertices has an out-neighbour");
            arcs.push((v, w));
            rest.remove(v);
            rest.remove(w);
            continue;
        }
        let u = before.iter().min_by_key(|&u| (t.out_neighbours(u).intersection_len(&before), u)).expect("non-empty");
        let x = &(t.out_neighbours(u) & t.in_neighbours(v)) & &rest;
        if 4 * x.len() + 3 > r {
            return Err(Error::InvariantBreach(format!(
                "greedy matching step removes {} vertices from {r}, above (r - 3) / 4",
                x.len()
            )));
        }
        arcs.push((u, v));
        rest.difference_with(&x);
        rest.remove(u);
        rest.remove(v);
    }
    let m = AcyclicMatching { arcs };
    if !verify_acyclic_matching(t, &m)? {
        return Err(Error::InvariantBreach("greedy matching is not acyclic".into()));
    }
    Ok(m)
}

/// Matched pairs share a colour (colours `1..=|M|` in matching order); every
/// other vertex gets its own colour, ascending by index. Uses `n - |M|` colours.
pub fn matching_to_colouring(t: &Digraph, m: &AcyclicMatching) -> Result<Colouring> {
    if !verify_acyclic_matching(t, m)? {
        return Err(Error::InvalidMatching("matching is not acyclic".into()));
    }
    let n = t.n();
    let mut colours = vec![0u32; n];
    for (i, &(u, v)) in m.arcs.iter().enumerate() {
        colours[u] = i as u32 + 1;
        colours[v] = i as u32 + 1;
    }
    let mut next = m.len() as u32;
    for c in colours.iter_mut().filter(|c| **c == 0) {
        next += 1;
        *c = next;
    }
    let c = Colouring::new(colours, (n - m.len()) as u32)?;
    if !verify_acyclic_dicolouring(t, &c)?.is_ok() {
        return Err(Error::InvariantBreach("matching colouring is not acyclic".into()));
    }
    Ok(c)
}
