//! Generators for the named digraph constructions.
//!
//! Generators that give vertices a meaning beyond their index return a
//! [`ConstructionOutput`] whose role map names every vertex.

use std::collections::BTreeMap;

use crate::dicolour::Colouring;
use crate::digraph::{Digraph, DigraphBuilder};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionOutput {
    pub digraph: Digraph,
    /// Semantic label to vertex index.
    pub roles: BTreeMap<String, usize>,
}

impl ConstructionOutput {
    pub fn role(&self, label: &str) -> Option<usize> {
        self.roles.get(label).copied()
    }

    /// Roles in vertex order, then label order.
    pub fn roles_by_vertex(&self) -> Vec<(usize, &str)> {
        let mut out: Vec<(usize, &str)> = self.roles.iter().map(|(l, &v)| (v, l.as_str())).collect();
        out.sort_unstable();
        out
    }
}

/// Copies `parts` side by side; returns the builder and each part's offset.
fn disjoint_union(parts: &[&Digraph]) -> (DigraphBuilder, Vec<usize>) {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0;
    for p in parts {
        offsets.push(total);
        total += p.n();
    }
    let mut b = DigraphBuilder::new(total);
    for (p, &off) in parts.iter().zip(&offsets) {
        for (u, v) in p.arcs() {
            b.ensure_arc(off + u, off + v);
        }
    }
    (b, offsets)
}

fn dominate(b: &mut DigraphBuilder, from: std::ops::Range<usize>, to: std::ops::Range<usize>) {
    for u in from {
        for v in to.clone() {
            b.ensure_arc(u, v);
        }
    }
}

/// `D(G)`: vertex `v` becomes `v_in = v` and `v_out = n + v` with the arc
/// `v_in -> v_out`; each edge `uv` becomes `u_out -> v_in` and `v_out -> u_in`.
pub fn vertex_split(g: &UndirectedGraph) -> ConstructionOutput {
    let n = g.n();
    let mut b = DigraphBuilder::new(2 * n);
    for v in 0..n {
        b.ensure_arc(v, n + v);
    }
    for (u, v) in g.edges() {
        b.ensure_arc(n + u, v);
        b.ensure_arc(n + v, u);
    }
    let mut roles = BTreeMap::new();
    for v in 0..n {
        roles.insert(format!("v_in({v})"), v);
        roles.insert(format!("v_out({v})"), n + v);
    }
    ConstructionOutput { digraph: b.build(), roles }
}

/// Acyclic colouring of `D(G)` from a proper colouring of `G` with colours
/// `1..=q`: with `s = ceil(sqrt(q))`, colour `c` is read as the pair
/// `((c - 1) / s + 1, (c - 1) % s + 1)`, the first part going to `v_in` and
/// the second to `v_out`.
pub fn vertex_split_colouring(g: &UndirectedGraph, proper: &[u32]) -> Result<Colouring> {
    let n = g.n();
    if proper.len() != n {
        return Err(Error::DomainMismatch { expected: n, got: proper.len() });
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| proper[u] == proper[v]) {
        return Err(Error::InvalidArgument(format!("colouring is not proper on edge {u} -- {v}")));
    }
    let q = proper.iter().copied().max().unwrap_or(1).max(1);
    if let Some(v) = proper.iter().position(|&c| c == 0) {
        return Err(Error::ColourOutOfRange { vertex: v, colour: 0, k: q });
    }
    let s = ceil_sqrt(q);
    let mut colours = vec![0; 2 * n];
    for v in 0..n {
        let c = proper[v] - 1;
        colours[v] = c / s + 1;
        colours[n + v] = c % s + 1;
    }
    Colouring::new(colours, s)
}

pub(crate) fn ceil_sqrt(q: u32) -> u32 {
    let mut s = 0;
    while s * s < q {
        s += 1;
    }
    s
}

/// `TT_k` with arcs `i -> j` for `i < j`.
pub fn transitive_tournament(k: usize) -> Digraph {
    let mut b = DigraphBuilder::new(k);
    for i in 0..k {
        for j in i + 1..k {
            b.ensure_arc(i, j);
        }
    }
    b.build()
}

/// `H1 => H2`: disjoint copies with every arc from `H1` to `H2`. Works on any
/// digraphs; the result is a tournament when both inputs are.
pub fn arrow(h1: &Digraph, h2: &Digraph) -> Digraph {
    let (mut b, off) = disjoint_union(&[h1, h2]);
    dominate(&mut b, 0..off[1], off[1]..off[1] + h2.n());
    b.build()
}

/// `Δ(H1, H2, H3)`: all arcs `H1 -> H2 -> H3 -> H1`.
pub fn delta(h1: &Digraph, h2: &Digraph, h3: &Digraph) -> Digraph {
    let (mut b, off) = disjoint_union(&[h1, h2, h3]);
    let end = off[2] + h3.n();
    dominate(&mut b, 0..off[1], off[1]..off[2]);
    dominate(&mut b, off[1]..off[2], off[2]..end);
    dominate(&mut b, off[2]..end, 0..off[1]);
    b.build()
}

/// `H_k = TT_k => (Δ(TT_k, TT_1, TT_1) => TT_k)` on `3k + 2` vertices.
pub fn hero_hk(k: usize) -> Result<Digraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("H_k needs k >= 1".into()));
    }
    let tt = transitive_tournament(k);
    let one = transitive_tournament(1);
    Ok(arrow(&tt, &arrow(&delta(&tt, &one, &one), &tt)))
}

/// The rotational tournament `R_n`: `v_i -> v_{i+j mod n}` for `1 <= j <= (n-1)/2`.
pub fn rotational_rn(n: usize) -> Result<Digraph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("R_n needs odd n >= 3, got {n}")));
    }
    let mut b = DigraphBuilder::new(n);
    for i in 0..n {
        for j in 1..=(n - 1) / 2 {
            b.ensure_arc(i, (i + j) % n);
        }
    }
    Ok(b.build())
}

/// `v_0 .. v_{(n-1)/2}` coloured 1, the rest 2.
pub fn rotational_halving_colouring(n: usize) -> Result<Colouring> {
    rotational_rn(n)?;
    Colouring::new((0..n).map(|i| if i <= (n - 1) / 2 { 1 } else { 2 }).collect(), 2)
}

/// Tournament on `2N` vertices, `N = k^2`: transitive orders on
/// `u_i = i - 1` and `v_i = N + i - 1`, matching arcs `u_i -> v_i`, and
/// `v_j -> u_i` whenever `i != j`.
pub fn matched_double_tt(k: usize) -> Result<ConstructionOutput> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let big = k * k;
    let mut b = DigraphBuilder::new(2 * big);
    for i in 0..big {
        for j in i + 1..big {
            b.ensure_arc(i, j);
            b.ensure_arc(big + i, big + j);
        }
        b.ensure_arc(i, big + i);
        for j in 0..big {
            if j != i {
                b.ensure_arc(big + j, i);
            }
        }
    }
    let mut roles = BTreeMap::new();
    for i in 0..big {
        roles.insert(format!("u({})", i + 1), i);
        roles.insert(format!("v({})", i + 1), big + i);
    }
    Ok(ConstructionOutput { digraph: b.build(), roles })
}

/// Tournament with dichromatic number 2 and acyclic dichromatic number at
/// least `k`. Two copies of `D(K_{k^2})`; in copy `c` the in-vertices form
/// `V(c,1)` and the out-vertices `V(c,2)`. Each `V(c,j)` is completed to a
/// transitive tournament in ascending order and every arc between the copies
/// goes from copy 1 to copy 2.
///
/// Layout: copy `c` occupies `(c - 1) * 2N .. c * 2N` with the vertex split
/// layout inside, `N = k^2`.
pub fn gap_tournament(k: usize) -> Result<ConstructionOutput> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let big = k * k;
    let split = vertex_split(&UndirectedGraph::complete(big));
    let (mut b, off) = disjoint_union(&[&split.digraph, &split.digraph]);
    for &o in &off {
        for part in [o..o + big, o + big..o + 2 * big] {
            for u in part.clone() {
                for v in u + 1..part.end {
                    b.ensure_arc(u, v);
                }
            }
        }
    }
    dominate(&mut b, 0..2 * big, 2 * big..4 * big);
    let mut roles = BTreeMap::new();
    for (c, &o) in off.iter().enumerate() {
        for x in 0..big {
            roles.insert(format!("V({},1,{x})", c + 1), o + x);
            roles.insert(format!("V({},2,{x})", c + 1), o + big + x);
        }
    }
    let digraph = b.build();
    debug_assert!(digraph.is_tournament());
    Ok(ConstructionOutput { digraph, roles })
}

/// The dicolouring `W_1 = V(1,1) ∪ V(2,1)`, `W_2 = V(1,2) ∪ V(2,2)`.
pub fn gap_colouring(k: usize) -> Result<Colouring> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let big = k * k;
    let colours = (0..4 * big).map(|v| if v % (2 * big) < big { 1 } else { 2 }).collect();
    Colouring::new(colours, 2)
}

/// Removes sources one at a time until none is left. Returns the remaining
/// digraph and the original index of each remaining vertex.
pub fn strip_sources(d: &Digraph) -> (Digraph, Vec<usize>) {
    let mut alive = d.vertex_set();
    loop {
        let source = alive.iter().find(|&v| !d.in_neighbours(v).intersects(&alive));
        match source {
            Some(v) => {
                alive.remove(v);
            }
            None => break,
        }
    }
    let sub = d.induced(&alive).expect("alive is a subset of V(D)");
    (sub.digraph, sub.vertices)
}

/// Index layout of [`split_reduction`] for an input with `n` vertices and `m` arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitLayout {
    pub n: usize,
    pub m: usize,
}

impl SplitLayout {
    pub fn x_v(&self, v: usize) -> usize {
        v
    }

    /// `x_{a_i}` for the `i`-th arc (0-based) in lexicographic order.
    pub fn x_a(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn x_b(&self) -> usize {
        self.n + self.m
    }

    /// `y_i`, `i` in `1..=3`.
    pub fn y(&self, i: usize) -> usize {
        self.n + self.m + i
    }

    /// `z_i`, `i` in `1..=3`.
    pub fn z(&self, i: usize) -> usize {
        self.n + self.m + 3 + i
    }

    pub fn total(&self) -> usize {
        self.n + self.m + 7
    }
}

/// The split digraph `D*` with `chi(D) <= 2` iff `acyclic chi(D*) <= 3`.
///
/// `X_V` is an independent copy of `V(D)`; each arc `a = uv` gets `x_a` with
/// `x_u -> x_a -> x_v`; `X_A` is transitive in lexicographic arc order; `x_b`
/// dominates `X_A` and is dominated by `X_V`; the triangles `Y` and `Z` are
/// wired so that `x -> y -> z -> x` for every `x` in `X_A ∪ {x_b}`.
///
/// The input may have digons but no loops and no sources; see [`strip_sources`].
pub fn split_reduction(d: &Digraph) -> Result<ConstructionOutput> {
    if let Some(v) = (0..d.n()).find(|&v| d.in_degree(v) == 0) {
        return Err(Error::InvalidArgument(format!("vertex {v} is a source; strip sources first")));
    }
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    let lay = SplitLayout { n: d.n(), m: arcs.len() };
    let mut b = DigraphBuilder::new(lay.total());
    for (i, &(u, v)) in arcs.iter().enumerate() {
        b.ensure_arc(lay.x_v(u), lay.x_a(i));
        b.ensure_arc(lay.x_a(i), lay.x_v(v));
        for j in i + 1..arcs.len() {
            b.ensure_arc(lay.x_a(i), lay.x_a(j));
        }
        b.ensure_arc(lay.x_b(), lay.x_a(i));
    }
    for v in 0..lay.n {
        b.ensure_arc(lay.x_v(v), lay.x_b());
    }
    for i in 1..=3 {
        let next = i % 3 + 1;
        b.ensure_arc(lay.y(i), lay.y(next));
        b.ensure_arc(lay.z(i), lay.z(next));
    }
    let hub: Vec<usize> = (0..lay.m).map(|i| lay.x_a(i)).chain([lay.x_b()]).collect();
    for &x in &hub {
        for i in 1..=3 {
            b.ensure_arc(x, lay.y(i));
            b.ensure_arc(lay.z(i), x);
        }
    }
    for i in 1..=3 {
        for j in 1..=3 {
            b.ensure_arc(lay.y(i), lay.z(j));
        }
    }

    let mut roles = BTreeMap::new();
    for v in 0..lay.n {
        roles.insert(format!("x_v({v})"), lay.x_v(v));
    }
    for (i, &(u, v)) in arcs.iter().enumerate() {
        roles.insert(format!("x_a({u},{v})"), lay.x_a(i));
    }
    roles.insert("x_b".into(), lay.x_b());
    for i in 1..=3 {
        roles.insert(format!("y{i}"), lay.y(i));
        roles.insert(format!("z{i}"), lay.z(i));
    }
    Ok(ConstructionOutput { digraph: b.build(), roles })
}

/// Acyclic 3-dicolouring of `D*` from a 2-dicolouring `phi` of `D`: `X_V`
/// inherits `phi`, `X_A ∪ {x_b}` gets 3, `y1` and `z1` get 1, the other
/// triangle vertices 2.
pub fn split_reduction_colouring(d: &Digraph, phi: &Colouring) -> Result<Colouring> {
    if phi.len() != d.n() {
        return Err(Error::DomainMismatch { expected: d.n(), got: phi.len() });
    }
    if phi.k() > 2 {
        return Err(Error::InvalidArgument("expected a colouring with at most 2 colours".into()));
    }
    let lay = SplitLayout { n: d.n(), m: d.arc_count() };
    let mut colours = vec![3; lay.total()];
    for v in 0..lay.n {
        colours[lay.x_v(v)] = phi.colour(v);
    }
    for i in 1..=3 {
        let c = if i == 1 { 1 } else { 2 };
        colours[lay.y(i)] = c;
        colours[lay.z(i)] = c;
    }
    Colouring::new(colours, 3)
}

/// `D_{k+1}` from a strong split digraph `D_k` and a tournament `T_k`:
/// disjoint copies (`D_k` first) plus a vertex `v` with `v -> u -> t -> v`
/// for every `u` in `D_k` and `t` in `T_k`.
pub fn split_lift(dk: &Digraph, tk: &Digraph) -> Result<ConstructionOutput> {
    if !dk.is_strong() {
        return Err(Error::NotStrong);
    }
    tk.ensure_tournament()?;
    let apex = Digraph::empty(1);
    let (mut b, off) = disjoint_union(&[dk, tk, &apex]);
    let (a, v) = (dk.n(), off[2]);
    for u in 0..a {
        b.ensure_arc(v, u);
        for t in off[1]..v {
            b.ensure_arc(u, t);
        }
    }
    for t in off[1]..v {
        b.ensure_arc(t, v);
    }
    let mut roles = BTreeMap::new();
    for u in 0..a {
        roles.insert(format!("D({u})"), u);
    }
    for t in 0..tk.n() {
        roles.insert(format!("T({t})"), a + t);
    }
    roles.insert("v".into(), v);
    Ok(ConstructionOutput { digraph: b.build(), roles })
}

/// Arcs of the gadget `W` on `x = 0`, `y = 1`, `z_i = i + 1`.
pub const W_ARCS: [(usize, usize); 18] = [
    (0, 1),
    (3, 2),
    (3, 4),
    (5, 4),
    (6, 5),
    (6, 7),
    (2, 0),
    (2, 1),
    (4, 0),
    (4, 1),
    (7, 0),
    (7, 1),
    (0, 3),
    (1, 3),
    (0, 6),
    (1, 6),
    (0, 5),
    (5, 1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    /// The 8-vertex gadget `W`.
    W,
    /// A directed triangle with a copy of `W` glued onto each of its arcs.
    GluedTriangle,
}

pub fn planar_gadget(kind: GadgetKind) -> ConstructionOutput {
    match kind {
        GadgetKind::W => {
            let digraph = Digraph::from_arcs(8, W_ARCS).expect("gadget arcs are valid");
            let mut roles = BTreeMap::from([("x".to_string(), 0), ("y".to_string(), 1)]);
            for i in 1..=6 {
                roles.insert(format!("z{i}"), i + 1);
            }
            ConstructionOutput { digraph, roles }
        }
        GadgetKind::GluedTriangle => glued_triangle(),
    }
}

fn glued_triangle() -> ConstructionOutput {
    let names = ["u", "v", "w"];
    let mut b = DigraphBuilder::new(3 + 3 * 6);
    let mut roles = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        roles.insert(name.to_string(), i);
    }
    for e in 0..3 {
        let (x, y) = (e, (e + 1) % 3);
        b.ensure_arc(x, y);
        let base = 3 + 6 * e;
        let map = |g: usize| match g {
            0 => x,
            1 => y,
            z => base + z - 2,
        };
        for (p, q) in W_ARCS {
            b.ensure_arc(map(p), map(q));
        }
        for i in 1..=6 {
            roles.insert(format!("W[{},{}].z{i}", names[x], names[y]), base + i - 1);
        }
    }
    ConstructionOutput { digraph: b.build(), roles }
}

/// The 3-degenerate oriented graph on an independent set `S = 0..s` plus one
/// vertex `x_{u,v,w}` per triple `u < v < w` of `S` (lexicographic order,
/// starting at index `s`), with arcs `x -> u`, `x -> w` and `v -> x`.
pub fn ramsey_3deg(s: usize) -> Result<ConstructionOutput> {
    if s < 3 {
        return Err(Error::InvalidArgument(format!("need |S| >= 3, got {s}")));
    }
    let triples = s * (s - 1) * (s - 2) / 6;
    let mut b = DigraphBuilder::new(s + triples);
    let mut roles = BTreeMap::new();
    for v in 0..s {
        roles.insert(format!("s({v})"), v);
    }
    let mut x = s;
    for u in 0..s {
        for v in u + 1..s {
            for w in v + 1..s {
                b.ensure_arc(x, u);
                b.ensure_arc(x, w);
                b.ensure_arc(v, x);
                roles.insert(format!("x({u},{v},{w})"), x);
                x += 1;
            }
        }
    }
    Ok(ConstructionOutput { digraph: b.build(), roles })
}

/// `S[parts_0, ..., parts_{s-1}]`: vertex `i` of `S` is replaced by
/// `parts[i]` and each arc `ij` of `S` becomes all arcs from block `i` to
/// block `j`. Blocks are laid out in order.
pub fn substitute(s: &Digraph, parts: &[Digraph]) -> Result<Digraph> {
    if parts.len() != s.n() {
        return Err(Error::InvalidArgument(format!("substitution needs {} parts, got {}", s.n(), parts.len())));
    }
    let refs: Vec<&Digraph> = parts.iter().collect();
    let (mut b, off) = disjoint_union(&refs);
    for (i, j) in s.arcs() {
        dominate(&mut b, off[i]..off[i] + parts[i].n(), off[j]..off[j] + parts[j].n());
    }
    Ok(b.build())
}

/// The independent set on `n` vertices.
pub fn independent(n: usize) -> Digraph {
    Digraph::empty(n)
}
