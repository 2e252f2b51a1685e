//! `i`-coherent colourings of the windows `Z_i` and the dynamic programme
//! that chains them into an `(s, t)`-colouring.
//!
//! A 2-colouring is stored as the set of vertices coloured 1 (a subset of
//! its window); every other vertex of the window is coloured 2.

use std::collections::HashSet;

use crate::dicolour::bipartite_cyclic;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

use super::decomposition::BlockDecomposition;
use super::valid_two_colouring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentSet {
    pub index: usize,
    /// Colour-1 sets, each a subset of `Z_index`.
    pub colourings: Vec<VertexSet>,
    /// Set once the members have been filtered against the previous window.
    pub star_filtered: bool,
}

impl CoherentSet {
    pub fn len(&self) -> usize {
        self.colourings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colourings.is_empty()
    }

    /// `2^8 (n + 1)^7`, the worst-case size.
    pub fn size_bound(n: usize) -> f64 {
        256.0 * ((n + 1) as f64).powi(7)
    }
}

/// Vertices forced to colour 2: `N+(s) ∪ N-(t)`.
fn forced_two(t: &Digraph, dec: &BlockDecomposition) -> VertexSet {
    t.out_neighbours(dec.s) | t.in_neighbours(dec.t)
}

/// The literal definition: `one` and `Z_i - one` give an acyclic
/// dicolouring of `T[Z_i]`, `s` and `t` are coloured 1 when present, and
/// `N+(s) ∪ N-(t)` is coloured 2 inside `Z_i`.
pub fn is_coherent(t: &Digraph, dec: &BlockDecomposition, i: usize, one: &VertexSet) -> bool {
    let z = &dec.z[i];
    if !one.is_subset(z) {
        return false;
    }
    let two = z - one;
    for end in [dec.s, dec.t] {
        if z.contains(end) && !one.contains(end) {
            return false;
        }
    }
    if forced_two(t, dec).intersects(one) {
        return false;
    }
    t.is_acyclic_within(one) && t.is_acyclic_within(&two) && !bipartite_cyclic(t, one, &two)
}

/// The possible colour-1 subsets of `X_j` given the colours of its path ends.
fn block_options(dec: &BlockDecomposition, j: usize, one: &VertexSet, forced: &VertexSet) -> Vec<VertexSet> {
    let xj = &dec.x[j];
    let n = xj.capacity();
    let l = dec.ell();
    let all_two = VertexSet::new(n);
    if j == 0 || j == l + 1 {
        return vec![all_two];
    }
    let before = one.contains(dec.path[j - 1]);
    let after = one.contains(dec.path[j]);
    let order = &dec.x_order[j];
    let r = order.len();
    let options: Vec<VertexSet> = match (before, after) {
        (true, true) => vec![all_two],
        (false, false) => vec![xj.clone()],
        // colour-1 vertices form a suffix of the acyclic order
        (true, false) => (0..=r).map(|a| VertexSet::from_members(n, order[a..].iter().copied())).collect(),
        // colour-2 vertices form a suffix
        (false, true) => (0..=r).map(|a| VertexSet::from_members(n, order[..a].iter().copied())).collect(),
    };
    options.into_iter().filter(|o| !o.intersects(forced)).collect()
}

/// Every `i`-coherent colouring of `T[Z_i]`. Candidates follow the block
/// structure (path colours, then one option per block) with pruning, and
/// each survivor is re-checked against [`is_coherent`].
pub fn enumerate_coherent(t: &Digraph, dec: &BlockDecomposition, i: usize) -> CoherentSet {
    enumerate_counting(t, dec, i, &mut 0)
}

pub(crate) fn enumerate_counting(t: &Digraph, dec: &BlockDecomposition, i: usize, candidates: &mut u64) -> CoherentSet {
    let n = t.n();
    let z = &dec.z[i];
    let forced = &forced_two(t, dec) & z;
    let on_path: Vec<usize> = dec.path.iter().copied().filter(|&v| z.contains(v)).collect();
    let blocks: Vec<usize> = dec.blocks_in(i).filter(|&j| !dec.x[j].is_empty()).collect();
    let mut out = Vec::new();

    for mask in 0u32..1 << on_path.len() {
        let one = VertexSet::from_members(n, (0..on_path.len()).filter(|b| mask >> b & 1 == 0).map(|b| on_path[b]));
        if [dec.s, dec.t].iter().any(|&e| z.contains(e) && !one.contains(e)) || one.intersects(&forced) {
            continue;
        }
        let assigned = VertexSet::from_members(n, on_path.iter().copied());
        let two = &assigned - &one;
        if !valid_two_colouring(t, &one, &two) {
            continue;
        }
        let options: Vec<Vec<VertexSet>> = blocks.iter().map(|&j| block_options(dec, j, &one, &forced)).collect();
        extend(t, dec, &blocks, &options, 0, one, two, &mut |one| {
            *candidates += 1;
            if is_coherent(t, dec, i, one) {
                out.push(one.clone());
            }
        });
    }
    CoherentSet { index: i, colourings: out, star_filtered: false }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    t: &Digraph,
    dec: &BlockDecomposition,
    blocks: &[usize],
    options: &[Vec<VertexSet>],
    depth: usize,
    one: VertexSet,
    two: VertexSet,
    emit: &mut impl FnMut(&VertexSet),
) {
    if depth == blocks.len() {
        emit(&one);
        return;
    }
    let xj = &dec.x[blocks[depth]];
    for opt in &options[depth] {
        let next_one = &one | opt;
        let next_two = &two | &(xj - opt);
        if valid_two_colouring(t, &next_one, &next_two) {
            extend(t, dec, blocks, options, depth + 1, next_one, next_two, emit);
        }
    }
}

/// `C*_i`: members of `cur` agreeing on `Z_i ∩ Z_{i-1}` with some member of `prev`.
pub fn dp_filter(prev: &CoherentSet, cur: CoherentSet, dec: &BlockDecomposition) -> CoherentSet {
    let i = cur.index;
    debug_assert!(prev.star_filtered && prev.index + 1 == i);
    let overlap = &dec.z[i] & &dec.z[i - 1];
    let keys: HashSet<VertexSet> = prev.colourings.iter().map(|c| c & &overlap).collect();
    let colourings = cur.colourings.into_iter().filter(|c| keys.contains(&(c & &overlap))).collect();
    CoherentSet { index: i, colourings, star_filtered: true }
}

/// Glues one member from each `C*_i`, walking down from the last window.
pub fn backtrack(stars: &[CoherentSet], dec: &BlockDecomposition) -> Result<Option<VertexSet>> {
    let Some(last) = stars.last() else {
        return Ok(None);
    };
    let Some(first) = last.colourings.first() else {
        return Ok(None);
    };
    let mut chosen = first.clone();
    let mut one = chosen.clone();
    for i in (0..stars.len() - 1).rev() {
        let overlap = &dec.z[i + 1] & &dec.z[i];
        let want = &chosen & &overlap;
        let psi = stars[i]
            .colourings
            .iter()
            .find(|c| (*c & &overlap) == want)
            .ok_or_else(|| Error::InvariantBreach(format!("no compatible colouring in window {i}")))?;
        one.union_with(psi);
        chosen = psi.clone();
    }
    Ok(Some(one))
}
