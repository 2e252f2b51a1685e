//! Acyclic 2-dicolourings of 2-degenerate oriented graphs.
//!
//! The target is a partition `(X1, X2)` such that reversing every arc
//! between the sides leaves an acyclic digraph; colouring the sides 1 and 2
//! is then an acyclic dicolouring.

use std::collections::VecDeque;

use crate::dicolour::{verify_acyclic_dicolouring, Colouring};
use crate::digraph::{Digraph, DigraphBuilder};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

fn check_partition(d: &Digraph, x1: &VertexSet, x2: &VertexSet) -> Result<()> {
    let n = d.n();
    if x1.capacity() != n || x2.capacity() != n {
        return Err(Error::DomainMismatch { expected: n, got: x1.capacity().max(x2.capacity()) });
    }
    if let Some(v) = (x1 & x2).first() {
        return Err(Error::Overlap(v));
    }
    if (x1 | x2).len() != n {
        return Err(Error::NotPartition);
    }
    Ok(())
}

/// `D` with every arc between `X1` and `X2` reversed.
pub fn reverse_between(d: &Digraph, x1: &VertexSet, x2: &VertexSet) -> Result<Digraph> {
    check_partition(d, x1, x2)?;
    let mut b = DigraphBuilder::new(d.n());
    for (u, v) in d.arcs() {
        if x1.contains(u) == x1.contains(v) {
            b.ensure_arc(u, v);
        } else {
            b.ensure_arc(v, u);
        }
    }
    Ok(b.build())
}

/// Colours `X1` with 1 and `X2` with 2, after checking that the reversed
/// digraph is acyclic.
pub fn partition_to_2colouring(d: &Digraph, x1: &VertexSet, x2: &VertexSet) -> Result<Colouring> {
    if !reverse_between(d, x1, x2)?.is_acyclic() {
        return Err(Error::InvalidPartition("reversing the arcs between the sides leaves a cycle".into()));
    }
    let c = Colouring::from_colour_one(x1);
    if !verify_acyclic_dicolouring(d, &c)?.is_ok() {
        return Err(Error::InvariantBreach("partition colouring is not acyclic".into()));
    }
    Ok(c)
}

/// Partial state during reinsertion: the vertices placed so far and their sides.
struct Placed<'a> {
    d: &'a Digraph,
    present: VertexSet,
    in_one: VertexSet,
}

impl Placed<'_> {
    /// Out-neighbours of `a` in the reversed digraph on the placed vertices.
    fn rev_out(&self, a: usize) -> VertexSet {
        let same = |b: usize| self.in_one.contains(a) == self.in_one.contains(b);
        let mut out = VertexSet::new(self.d.n());
        for b in &(self.d.out_neighbours(a) & &self.present) {
            if same(b) {
                out.insert(b);
            }
        }
        for b in &(self.d.in_neighbours(a) & &self.present) {
            if !same(b) {
                out.insert(b);
            }
        }
        out
    }

    /// Whether the reversed digraph has a directed path from `from` to `to`.
    fn path(&self, from: usize, to: usize) -> bool {
        let mut seen = VertexSet::singleton(self.d.n(), from);
        let mut queue = VecDeque::from([from]);
        while let Some(a) = queue.pop_front() {
            if a == to {
                return true;
            }
            for b in &self.rev_out(a) {
                if seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        false
    }

    fn side(&self, v: usize) -> usize {
        if self.in_one.contains(v) {
            1
        } else {
            2
        }
    }

    fn place(&mut self, x: usize, side: usize) {
        self.present.insert(x);
        if side == 1 {
            self.in_one.insert(x);
        }
    }
}

/// A partition `(X1, X2)` of a 2-degenerate oriented graph with
/// `D^rev(X1, X2)` acyclic. Acyclic inputs give `(∅, V)`.
///
/// Vertices are peeled (lowest index of degree at most 2 first) and put back
/// in reverse order. A returning vertex `x` of degree at most 1 goes to `X2`.
/// Otherwise its two neighbours `v1, v2` decide:
///
/// 1. one in-, one out-neighbour (`v1 -> x -> v2`), both in `X_i`: `X_i` if
///    the reversed graph has a `(v1, v2)`-path, else `X_{3-i}`;
/// 2. one in-, one out-neighbour on different sides: `X1`;
/// 3. two out- or two in-neighbours on the same side: `X1`;
/// 4. two out- or two in-neighbours with `v1 ∈ X1`, `v2 ∈ X2`: for two
///    out-neighbours `X1` if there is a `(v2, v1)`-path, else `X2`; for two
///    in-neighbours `X1` if there is a `(v1, v2)`-path, else `X2`.
pub fn two_degenerate_partition(d: &Digraph) -> Result<(VertexSet, VertexSet)> {
    d.ensure_oriented()?;
    let n = d.n();
    if d.is_acyclic() {
        return Ok((VertexSet::new(n), VertexSet::full(n)));
    }
    let g = d.underlying();
    let mut alive = VertexSet::full(n);
    let mut peeled = Vec::with_capacity(n);
    while !alive.is_empty() {
        let x = alive.iter().find(|&v| g.neighbours(v).intersection_len(&alive) <= 2).ok_or(Error::NotTwoDegenerate)?;
        alive.remove(x);
        peeled.push(x);
    }

    let mut st = Placed { d, present: VertexSet::new(n), in_one: VertexSet::new(n) };
    for &x in peeled.iter().rev() {
        let outs: Vec<usize> = (d.out_neighbours(x) & &st.present).to_vec();
        let ins: Vec<usize> = (d.in_neighbours(x) & &st.present).to_vec();
        let side = match (ins.as_slice(), outs.as_slice()) {
            (i, o) if i.len() + o.len() <= 1 => 2,
            (&[v1], &[v2]) => {
                let (s1, s2) = (st.side(v1), st.side(v2));
                if s1 == s2 {
                    if st.path(v1, v2) {
                        s1
                    } else {
                        3 - s1
                    }
                } else {
                    1
                }
            }
            (&[], &[a, b]) | (&[a, b], &[]) => {
                let source = ins.is_empty();
                if st.side(a) == st.side(b) {
                    1
                } else {
                    let (v1, v2) = if st.side(a) == 1 { (a, b) } else { (b, a) };
                    let path = if source { st.path(v2, v1) } else { st.path(v1, v2) };
                    if path {
                        1
                    } else {
                        2
                    }
                }
            }
            _ => {
                return Err(Error::InvariantBreach(format!(
                    "vertex {x} returns with {} neighbours; expected at most 2",
                    ins.len() + outs.len()
                )))
            }
        };
        st.place(x, side);
        if st.rev_out(x).iter().any(|y| st.path(y, x)) {
            return Err(Error::InvariantBreach(format!("reinserting {x} closed a cycle")));
        }
    }
    let x1 = st.in_one;
    let x2 = x1.complement();
    Ok((x1, x2))
}
