//! Colourings, violating cycles and the verifiers built on them.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A total map from vertices to colours `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Colouring {
    colours: Vec<u32>,
    k: u32,
}

impl Colouring {
    pub fn new(colours: Vec<u32>, k: u32) -> Result<Self> {
        if let Some((v, &c)) = colours.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(Error::ColourOutOfRange { vertex: v, colour: c, k });
        }
        Ok(Colouring { colours, k })
    }

    /// Every vertex coloured 1.
    pub fn monochromatic(n: usize) -> Self {
        Colouring { colours: vec![1; n], k: 1 }
    }

    /// Two colours: members of `one` get colour 1, the rest colour 2.
    pub fn from_colour_one(one: &VertexSet) -> Self {
        let colours = (0..one.capacity()).map(|v| if one.contains(v) { 1 } else { 2 }).collect();
        Colouring { colours, k: 2 }
    }

    /// Colour `i + 1` for the members of `classes[i]`. The classes must
    /// partition `0..n`.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut colours = vec![0u32; n];
        for (i, class) in classes.iter().enumerate() {
            for &v in class {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if colours[v] != 0 {
                    return Err(Error::Overlap(v));
                }
                colours[v] = i as u32 + 1;
            }
        }
        if colours.contains(&0) {
            return Err(Error::NotPartition);
        }
        Ok(Colouring { colours, k: classes.len() as u32 })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// Number of distinct colours actually used.
    pub fn used(&self) -> usize {
        let mut seen = vec![false; self.k as usize + 1];
        self.colours.iter().filter(|&&c| !std::mem::replace(&mut seen[c as usize], true)).count()
    }

    /// Class `i` holds the vertices of colour `i + 1`.
    pub fn classes(&self) -> Vec<VertexSet> {
        let n = self.colours.len();
        let mut classes = vec![VertexSet::new(n); self.k as usize];
        for (v, &c) in self.colours.iter().enumerate() {
            classes[c as usize - 1].insert(v);
        }
        classes
    }

    /// Renumbers colours by first appearance and drops unused ones.
    pub fn normalised(&self) -> Colouring {
        let mut map = vec![0u32; self.k as usize + 1];
        let mut next = 0;
        let colours = self
            .colours
            .iter()
            .map(|&c| {
                if map[c as usize] == 0 {
                    next += 1;
                    map[c as usize] = next;
                }
                map[c as usize]
            })
            .collect();
        Colouring { colours, k: next }
    }

    fn check_domain(&self, d: &Digraph) -> Result<()> {
        if self.colours.len() != d.n() {
            return Err(Error::DomainMismatch { expected: d.n(), got: self.colours.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    Monochromatic,
    Alternating,
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleKind::Monochromatic => "monochromatic",
            CycleKind::Alternating => "alternating",
        })
    }
}

/// A directed cycle that is monochromatic or alternates between two classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ViolatingCycle {
    /// The cycle, starting at its smallest vertex; the closing arc is implicit.
    pub vertices: Vec<usize>,
    pub kind: CycleKind,
    /// The colour (monochromatic) or the two colours, ascending.
    pub colours: Vec<u32>,
}

impl ViolatingCycle {
    /// Re-checks the witness: a directed cycle of `d` of the claimed kind under `c`.
    pub fn is_genuine(&self, d: &Digraph, c: &Colouring) -> bool {
        let len = self.vertices.len();
        if len < 2 || c.len() != d.n() || self.vertices.iter().any(|&v| v >= d.n()) {
            return false;
        }
        let distinct = VertexSet::from_members(d.n(), self.vertices.iter().copied());
        if distinct.len() != len {
            return false;
        }
        let closed = (0..len).all(|i| d.has_arc(self.vertices[i], self.vertices[(i + 1) % len]));
        if !closed {
            return false;
        }
        match self.kind {
            CycleKind::Monochromatic => {
                self.colours.len() == 1 && self.vertices.iter().all(|&v| c.colour(v) == self.colours[0])
            }
            CycleKind::Alternating => {
                let (a, b) = match self.colours[..] {
                    [a, b] if a != b => (a, b),
                    _ => return false,
                };
                len.is_multiple_of(2)
                    && (0..len).all(|i| {
                        let (x, y) = (c.colour(self.vertices[i]), c.colour(self.vertices[(i + 1) % len]));
                        x != y && (x == a || x == b) && (y == a || y == b)
                    })
            }
        }
    }
}

impl fmt::Display for ViolatingCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cycle {}", self.kind)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation(ViolatingCycle),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn violation(self) -> Option<ViolatingCycle> {
        match self {
            Verdict::Ok => None,
            Verdict::Violation(c) => Some(c),
        }
    }
}

/// Lexicographically smallest among the shortest cycles that use only vertices
/// of `allowed` and arcs accepted by `arc_ok`, written from its minimum vertex.
fn shortest_cycle(d: &Digraph, allowed: &VertexSet, arc_ok: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let n = d.n();
    let mut within = allowed.clone();
    let mut best: Option<(usize, usize)> = None;
    let mut dist = vec![usize::MAX; n];

    // Distance from every vertex of `within` to `r`, walking arcs backwards.
    let distances_to = |r: usize, within: &VertexSet, dist: &mut Vec<usize>| {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[r] = 0;
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            for p in d.in_neighbours(x).iter() {
                if within.contains(p) && dist[p] == usize::MAX && arc_ok(p, x) {
                    dist[p] = dist[x] + 1;
                    queue.push_back(p);
                }
            }
        }
    };

    for r in allowed.iter() {
        distances_to(r, &within, &mut dist);
        let len = d
            .out_neighbours(r)
            .iter()
            .filter(|&w| within.contains(w) && dist[w] != usize::MAX && arc_ok(r, w))
            .map(|w| dist[w] + 1)
            .min();
        if let Some(len) = len {
            if best.is_none_or(|(l, _)| len < l) {
                best = Some((len, r));
            }
        }
        within.remove(r);
    }

    let (len, r) = best?;
    let mut within = allowed.clone();
    for v in allowed.iter().take_while(|&v| v < r) {
        within.remove(v);
    }
    distances_to(r, &within, &mut dist);
    let mut cycle = vec![r];
    let mut cur = r;
    for remaining in (2..=len).rev() {
        let next = d
            .out_neighbours(cur)
            .iter()
            .find(|&w| within.contains(w) && dist[w] == remaining - 1 && arc_ok(cur, w))
            .expect("distance labels lead back to the root");
        cycle.push(next);
        cur = next;
    }
    Some(cycle)
}

fn better(candidate: &ViolatingCycle, best: &Option<ViolatingCycle>) -> bool {
    match best {
        None => true,
        Some(b) => (candidate.vertices.len(), &candidate.vertices) < (b.vertices.len(), &b.vertices),
    }
}

fn monochromatic_witness(d: &Digraph, classes: &[VertexSet], best: &mut Option<ViolatingCycle>) {
    for (i, class) in classes.iter().enumerate() {
        if class.len() < 2 || d.is_acyclic_within(class) {
            continue;
        }
        let vertices = shortest_cycle(d, class, |_, _| true).expect("cyclic class has a cycle");
        let cand = ViolatingCycle { vertices, kind: CycleKind::Monochromatic, colours: vec![i as u32 + 1] };
        if better(&cand, best) {
            *best = Some(cand);
        }
    }
}

/// Whether the arcs between `a` and `b` contain a cycle.
pub(crate) fn bipartite_cyclic(d: &Digraph, a: &VertexSet, b: &VertexSet) -> bool {
    // Peel vertices with no in-arc from the other side until stuck.
    let mut alive_a = a.clone();
    let mut alive_b = b.clone();
    loop {
        let progress = peel(d, &mut alive_a, &alive_b) | peel(d, &mut alive_b, &alive_a);
        if alive_a.is_empty() || alive_b.is_empty() {
            return false;
        }
        if !progress {
            return true;
        }
    }
}

/// Drops the vertices of `side` with no in-arc from `other`; true if any went.
fn peel(d: &Digraph, side: &mut VertexSet, other: &VertexSet) -> bool {
    let dead: Vec<usize> = side.iter().filter(|&v| !d.in_neighbours(v).intersects(other)).collect();
    for &v in &dead {
        side.remove(v);
    }
    !dead.is_empty()
}

fn alternating_witness(d: &Digraph, classes: &[VertexSet], best: &mut Option<ViolatingCycle>) {
    let big: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].len() >= 2).collect();
    for (x, &i) in big.iter().enumerate() {
        for &j in &big[x + 1..] {
            let (a, b) = (&classes[i], &classes[j]);
            if !bipartite_cyclic(d, a, b) {
                continue;
            }
            let union = a | b;
            let vertices = shortest_cycle(d, &union, |u, v| a.contains(u) != a.contains(v))
                .expect("cyclic class pair has a cycle");
            let cand =
                ViolatingCycle { vertices, kind: CycleKind::Alternating, colours: vec![i as u32 + 1, j as u32 + 1] };
            if better(&cand, best) {
                *best = Some(cand);
            }
        }
    }
}

fn into_verdict(best: Option<ViolatingCycle>) -> Verdict {
    best.map_or(Verdict::Ok, Verdict::Violation)
}

/// Checks that every colour class induces an acyclic subdigraph. Digons are
/// allowed and count as 2-cycles.
pub fn verify_dicolouring(d: &Digraph, c: &Colouring) -> Result<Verdict> {
    c.check_domain(d)?;
    let mut best = None;
    monochromatic_witness(d, &c.classes(), &mut best);
    Ok(into_verdict(best))
}

/// Checks that every class is acyclic and every pair of classes spans an
/// acyclic bipartite digraph. The witness is a shortest violating cycle.
pub fn verify_acyclic_dicolouring(d: &Digraph, c: &Colouring) -> Result<Verdict> {
    d.ensure_oriented()?;
    c.check_domain(d)?;
    let classes = c.classes();
    let mut best = None;
    monochromatic_witness(d, &classes, &mut best);
    alternating_witness(d, &classes, &mut best);
    Ok(into_verdict(best))
}

pub fn find_violating_cycle(d: &Digraph, c: &Colouring) -> Result<Option<ViolatingCycle>> {
    Ok(verify_acyclic_dicolouring(d, c)?.violation())
}

/// Pairwise vertex-disjoint arcs of a tournament.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AcyclicMatching {
    pub arcs: Vec<(usize, usize)>,
}

impl AcyclicMatching {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Checks that the arcs exist in `d` and share no vertex.
    pub fn check_structure(&self, d: &Digraph) -> Result<()> {
        let mut used = VertexSet::new(d.n());
        for &(u, v) in &self.arcs {
            d.check_vertex(u)?;
            d.check_vertex(v)?;
            if !d.has_arc(u, v) {
                return Err(Error::InvalidMatching(format!("{u} -> {v} is not an arc")));
            }
            for x in [u, v] {
                if !used.insert(x) {
                    return Err(Error::InvalidMatching(format!("vertex {x} is covered twice")));
                }
            }
        }
        Ok(())
    }
}

/// Whether the four arcs between `{u, v}` and `{x, y}` form a directed 4-cycle.
#[inline]
pub(crate) fn matched_pair_cyclic(d: &Digraph, (u, v): (usize, usize), (x, y): (usize, usize)) -> bool {
    let cyc = |a: usize, b: usize| d.has_arc(u, a) && d.has_arc(a, v) && d.has_arc(v, b) && d.has_arc(b, u);
    cyc(x, y) || cyc(y, x)
}

/// For every two arcs `uv`, `xy` of the matching, the digraph
/// `T[{u, v, x, y}]` minus `uv` and `xy` must be acyclic.
pub fn verify_acyclic_matching(t: &Digraph, m: &AcyclicMatching) -> Result<bool> {
    m.check_structure(t)?;
    for (i, &a) in m.arcs.iter().enumerate() {
        for &b in &m.arcs[i + 1..] {
            if matched_pair_cyclic(t, a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Disjoint blocks of two or three vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AcyclicPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl AcyclicPartition {
    pub fn check_structure(&self, d: &Digraph) -> Result<()> {
        let mut used = VertexSet::new(d.n());
        for block in &self.blocks {
            if !(2..=3).contains(&block.len()) {
                return Err(Error::InvalidPartition(format!("block of size {}", block.len())));
            }
            for &v in block {
                d.check_vertex(v)?;
                if !used.insert(v) {
                    return Err(Error::Overlap(v));
                }
            }
        }
        Ok(())
    }
}

/// Whether the arcs between two small vertex lists form an acyclic digraph.
pub(crate) fn small_bipartite_acyclic(d: &Digraph, a: &[usize], b: &[usize]) -> bool {
    let verts: Vec<usize> = a.iter().chain(b).copied().collect();
    let k = verts.len();
    debug_assert!(k <= 32);
    let side_a = |i: usize| i < a.len();
    let mut out = vec![0u32; k];
    for i in 0..k {
        for j in 0..k {
            if side_a(i) != side_a(j) && d.has_arc(verts[i], verts[j]) {
                out[i] |= 1 << j;
            }
        }
    }
    let mut alive: u32 = if k == 32 { !0 } else { (1 << k) - 1 };
    loop {
        let sink = (0..k).find(|&i| alive >> i & 1 == 1 && out[i] & alive == 0);
        match sink {
            Some(i) => alive &= !(1 << i),
            None => return alive == 0,
        }
    }
}

pub fn verify_acyclic_partition(t: &Digraph, p: &AcyclicPartition) -> Result<bool> {
    p.check_structure(t)?;
    for (i, a) in p.blocks.iter().enumerate() {
        for b in &p.blocks[i + 1..] {
            if !small_bipartite_acyclic(t, a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
