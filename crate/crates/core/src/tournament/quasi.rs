//! Acyclic 2-dicolouring of quasi-transitive oriented graphs.
//!
//! A strong quasi-transitive oriented graph `D` with at least two vertices
//! decomposes as `S[Q_1, ..., Q_s]` with `S` a strong tournament, and then
//! `D` is acyclically 2-colourable iff `S` is and every `Q_i` is acyclic.
//! The parts are taken to be the connected components of the complement of
//! the underlying graph. These may refine the canonical parts, which keeps
//! `S` strong and the criterion intact; the module property of each part is
//! checked rather than assumed.

use crate::dicolour::{verify_acyclic_dicolouring, Colouring};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

use super::{acyclic_2_dicolour, TwoColourResult};

pub fn qt_acyclic_2col(d: &Digraph) -> Result<Option<Colouring>> {
    d.ensure_oriented()?;
    if let Some((u, v, w)) = d.quasi_transitivity_violation() {
        return Err(Error::NotQuasiTransitive(u, v, w));
    }
    let n = d.n();
    let mut colours = vec![1u32; n];
    for comp in d.strong_components() {
        if comp.len() == 1 {
            continue;
        }
        let sub = d.induced_by_list(&comp)?;
        match strong_case(&sub.digraph)? {
            Some(local) => {
                for (i, &v) in sub.vertices.iter().enumerate() {
                    colours[v] = local[i];
                }
            }
            None => return Ok(None),
        }
    }
    let c = Colouring::new(colours, 2)?;
    if !verify_acyclic_dicolouring(d, &c)?.is_ok() {
        return Err(Error::InvariantBreach("quasi-transitive extension colouring is not acyclic".into()));
    }
    Ok(Some(c))
}

fn complement_components(h: &Digraph) -> Vec<Vec<usize>> {
    let n = h.n();
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !h.adjacent(u, v));
    UndirectedGraph::from_edges(n, edges).expect("pairs are distinct and in range").connected_components()
}

fn strong_case(h: &Digraph) -> Result<Option<Vec<u32>>> {
    let parts = complement_components(h);
    if parts.len() < 2 {
        return Err(Error::InvariantBreach("strong quasi-transitive digraph with connected complement".into()));
    }
    let mut part_of = vec![0; h.n()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    for part in &parts {
        let r = part[0];
        for &q in part {
            for x in (0..h.n()).filter(|&x| part_of[x] != part_of[r]) {
                if h.has_arc(x, q) != h.has_arc(x, r) || h.has_arc(q, x) != h.has_arc(r, x) {
                    return Err(Error::InvariantBreach(format!("part containing {r} is not a module")));
                }
            }
        }
    }
    for part in &parts {
        if !h.induced_by_list(part)?.digraph.is_acyclic() {
            return Ok(None);
        }
    }
    let reps: Vec<usize> = parts.iter().map(|p| p[0]).collect();
    let quotient = h.induced_by_list(&reps)?.digraph;
    if !quotient.is_strong() {
        return Err(Error::InvariantBreach("quotient of a strong digraph is not strong".into()));
    }
    match acyclic_2_dicolour(&quotient)? {
        TwoColourResult::Colourable(c) => Ok(Some((0..h.n()).map(|v| c.colour(part_of[v])).collect())),
        _ => Ok(None),
    }
}
