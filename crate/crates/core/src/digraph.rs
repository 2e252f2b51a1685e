//! Loop-free digraphs stored as dense out/in adjacency bit matrices.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    m: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

/// Incremental constructor for [`Digraph`]. The finished digraph is immutable.
#[derive(Clone, Debug)]
pub struct DigraphBuilder {
    graph: Digraph,
}

impl DigraphBuilder {
    pub fn new(n: usize) -> Self {
        DigraphBuilder { graph: Digraph::empty(n) }
    }

    /// Adds the arc `u -> v`, rejecting loops, duplicates and out-of-range ends.
    pub fn arc(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        let n = self.graph.n;
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.graph.has_arc(u, v) {
            return Err(Error::DuplicateArc(u, v));
        }
        self.graph.insert_arc(u, v);
        Ok(self)
    }

    /// Adds `u -> v` unless it is already present. Panics on loops.
    pub(crate) fn ensure_arc(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loop at {u}");
        if !self.graph.has_arc(u, v) {
            self.graph.insert_arc(u, v);
        }
    }

    pub fn build(self) -> Digraph {
        self.graph
    }
}

/// An induced (or bipartite-restricted) subdigraph together with the host
/// vertex behind each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdigraph {
    pub digraph: Digraph,
    /// `vertices[i]` is the host vertex relabelled to `i`.
    pub vertices: Vec<usize>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph { n, m: 0, out: vec![VertexSet::new(n); n], inn: vec![VertexSet::new(n); n] }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut b = DigraphBuilder::new(n);
        for (u, v) in arcs {
            b.arc(u, v)?;
        }
        Ok(b.build())
    }

    fn insert_arc(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inn[v].insert(u);
        self.m += 1;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    #[inline]
    pub fn out_neighbours(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    #[inline]
    pub fn in_neighbours(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// All arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Lexicographically first digon `(u, v)` with `u < v`, if any.
    pub fn digon(&self) -> Option<(usize, usize)> {
        (0..self.n).find_map(|u| {
            let both = &self.out[u] & &self.inn[u];
            both.iter().find(|&v| v > u).map(|v| (u, v))
        })
    }

    pub fn is_oriented(&self) -> bool {
        self.digon().is_none()
    }

    pub fn ensure_oriented(&self) -> Result<()> {
        match self.digon() {
            Some((u, v)) => Err(Error::Digon(u, v)),
            None => Ok(()),
        }
    }

    pub fn is_tournament(&self) -> bool {
        self.is_oriented() && self.m == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn ensure_tournament(&self) -> Result<()> {
        if self.is_tournament() {
            Ok(())
        } else {
            Err(Error::NotTournament)
        }
    }

    /// Lexicographically smallest topological order, or `None` if there is a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for v in self.out[u].iter() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.is_acyclic_within(&self.vertex_set())
    }

    /// Whether `D[set]` is acyclic.
    pub fn is_acyclic_within(&self, set: &VertexSet) -> bool {
        self.topological_order_within(set).is_some()
    }

    /// Topological order of `D[set]` (smallest ready vertex first).
    pub fn topological_order_within(&self, set: &VertexSet) -> Option<Vec<usize>> {
        let members = set.to_vec();
        let mut indeg = vec![0usize; self.n];
        let mut ready = BTreeSet::new();
        for &v in &members {
            indeg[v] = self.inn[v].intersection_len(set);
            if indeg[v] == 0 {
                ready.insert(v);
            }
        }
        let mut order = Vec::with_capacity(members.len());
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for v in (&self.out[u] & set).iter() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        (order.len() == members.len()).then_some(order)
    }

    /// Vertices reachable from `from` (including it) using only vertices of `within`.
    pub fn reachable_within(&self, from: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n);
        seen.insert(from);
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for v in self.out[u].iter() {
                if within.contains(v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Shortest directed path from `s` to `t` found by breadth-first search that
    /// scans out-neighbours in ascending order; ties go to the lowest-index parent.
    pub fn shortest_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in self.out[u].iter() {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return None;
        }
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    fn sorted_members(&self, set: &VertexSet) -> Result<Vec<usize>> {
        let members = set.to_vec();
        if let Some(&v) = members.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(members)
    }

    /// The subdigraph induced by `set`, relabelled in ascending host order.
    pub fn induced(&self, set: &VertexSet) -> Result<Subdigraph> {
        let vertices = self.sorted_members(set)?;
        Ok(self.induced_on(vertices))
    }

    /// Induced subdigraph on an explicit vertex list, relabelled in list order.
    pub fn induced_by_list(&self, vertices: &[usize]) -> Result<Subdigraph> {
        let mut seen = VertexSet::new(self.n);
        for &v in vertices {
            self.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        Ok(self.induced_on(vertices.to_vec()))
    }

    fn induced_on(&self, vertices: Vec<usize>) -> Subdigraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut b = DigraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for v in self.out[u].iter() {
                if index[v] != usize::MAX {
                    b.ensure_arc(i, index[v]);
                }
            }
        }
        Subdigraph { digraph: b.build(), vertices }
    }

    pub fn without_vertex(&self, v: usize) -> Result<Subdigraph> {
        self.check_vertex(v)?;
        let mut set = self.vertex_set();
        set.remove(v);
        self.induced(&set)
    }

    /// `D[A, B]`: vertices `A ∪ B`, arcs of `D` with one end in each side.
    pub fn bipartite_between(&self, a: &VertexSet, b: &VertexSet) -> Result<Subdigraph> {
        let av = self.sorted_members(a)?;
        let bv = self.sorted_members(b)?;
        if let Some(&v) = av.iter().find(|&&v| b.contains(v)) {
            return Err(Error::Overlap(v));
        }
        let mut vertices: Vec<usize> = av.iter().chain(bv.iter()).copied().collect();
        vertices.sort_unstable();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut builder = DigraphBuilder::new(vertices.len());
        for (x, y) in [(&av, b), (&bv, a)] {
            for &u in x.iter() {
                for v in self.out[u].iter() {
                    if y.contains(v) {
                        builder.ensure_arc(index[u], index[v]);
                    }
                }
            }
        }
        Ok(Subdigraph { digraph: builder.build(), vertices })
    }

    /// Strongly connected components, in a topological order of the condensation.
    /// Members of each component are sorted ascending.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        // Iterative Tarjan; components come out sinks first.
        let n = self.n;
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut counter = 0;
        let succ: Vec<Vec<usize>> = (0..n).map(|v| self.out[v].to_vec()).collect();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut next)) = call.last_mut() {
                if *next < succ[v].len() {
                    let w = succ[v][*next];
                    *next += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        components.push(comp);
                    }
                }
            }
        }
        components.reverse();
        components
    }

    pub fn is_strong(&self) -> bool {
        self.n <= 1 || self.strong_components().len() == 1
    }

    /// First arc `uv` (lexicographic) for which `D[N+(v) ∩ N-(u)]` has a cycle.
    pub fn light_violation(&self) -> Option<(usize, usize)> {
        self.arcs().find(|&(u, v)| {
            let common = &self.out[v] & &self.inn[u];
            common.len() >= 2 && !self.is_acyclic_within(&common)
        })
    }

    /// Lightness: for every arc `uv`, `D[N+(v) ∩ N-(u)]` is acyclic.
    ///
    /// Non-tournament oriented inputs are evaluated literally unless `strict`
    /// is set, in which case they are rejected.
    pub fn is_light(&self, strict: bool) -> Result<bool> {
        if strict {
            self.ensure_tournament()?;
        }
        Ok(self.light_violation().is_none())
    }

    /// A copy of the tournament `h` inside the tournament `self`, as the host
    /// vertex for each vertex of `h`.
    pub fn find_subtournament(&self, h: &Digraph) -> Result<Option<Vec<usize>>> {
        self.ensure_tournament()?;
        h.ensure_tournament()?;
        if h.n > self.n {
            return Ok(None);
        }
        let mut order: Vec<usize> = (0..h.n).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(h.out_degree(x).max(h.in_degree(x))));
        let candidates: Vec<Vec<usize>> = (0..h.n)
            .map(|x| {
                (0..self.n)
                    .filter(|&t| self.out_degree(t) >= h.out_degree(x) && self.in_degree(t) >= h.in_degree(x))
                    .collect()
            })
            .collect();
        let mut map = vec![usize::MAX; h.n];
        let mut used = VertexSet::new(self.n);
        fn extend(
            host: &Digraph,
            h: &Digraph,
            order: &[usize],
            candidates: &[Vec<usize>],
            depth: usize,
            map: &mut [usize],
            used: &mut VertexSet,
        ) -> bool {
            if depth == order.len() {
                return true;
            }
            let x = order[depth];
            for &t in &candidates[x] {
                if used.contains(t) {
                    continue;
                }
                let consistent = order[..depth].iter().all(|&y| h.has_arc(x, y) == host.has_arc(t, map[y]));
                if !consistent {
                    continue;
                }
                map[x] = t;
                used.insert(t);
                if extend(host, h, order, candidates, depth + 1, map, used) {
                    return true;
                }
                used.remove(t);
            }
            map[x] = usize::MAX;
            false
        }
        Ok(extend(self, h, &order, &candidates, 0, &mut map, &mut used).then_some(map))
    }

    pub fn contains_subtournament(&self, h: &Digraph) -> Result<bool> {
        Ok(self.find_subtournament(h)?.is_some())
    }

    /// Every arc flipped.
    pub fn reverse(&self) -> Digraph {
        Digraph { n: self.n, m: self.m, out: self.inn.clone(), inn: self.out.clone() }
    }

    /// The underlying undirected graph; digons collapse to a single edge.
    pub fn underlying(&self) -> UndirectedGraph {
        let edges = self.arcs().filter(|&(u, v)| u < v || !self.has_arc(v, u));
        UndirectedGraph::from_edges(self.n, edges.map(|(u, v)| (u.min(v), u.max(v))))
            .expect("arcs of a loop-free digraph give a simple graph")
    }

    /// A directed 2-path `u -> v -> w` whose ends are non-adjacent, if any.
    pub fn quasi_transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for v in 0..self.n {
            for u in self.inn[v].iter() {
                for w in self.out[v].iter() {
                    if u != w && !self.adjacent(u, w) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    pub fn is_quasi_transitive(&self) -> bool {
        self.quasi_transitivity_violation().is_none()
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn vs(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied())
    }

    #[test]
    fn builder_rejects_bad_arcs() {
        assert_eq!(Digraph::from_arcs(2, [(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(Digraph::from_arcs(2, [(0, 1), (0, 1)]), Err(Error::DuplicateArc(0, 1)));
        assert_eq!(Digraph::from_arcs(2, [(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
        let d = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert!(!d.is_oriented());
        assert_eq!(d.digon(), Some((0, 1)));
    }

    #[test]
    fn acyclicity_examples() {
        assert!(Digraph::from_arcs(2, [(0, 1)]).unwrap().is_acyclic());
        assert!(!triangle().is_acyclic());
        // D(K2) as labelled in the vertex-splitting layout: 0,1 in-copies; 2,3 out-copies.
        let dk2 = Digraph::from_arcs(4, [(0, 2), (1, 3), (2, 1), (3, 0)]).unwrap();
        assert!(!dk2.is_acyclic());
    }

    #[test]
    fn induced_and_bipartite() {
        let t = triangle();
        let sub = t.induced(&vs(3, &[0, 1])).unwrap();
        assert_eq!(sub.digraph.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(t.induced(&t.vertex_set()).unwrap().digraph, t);
        assert!(matches!(t.induced(&vs(5, &[4])), Err(Error::VertexOutOfRange { .. })));

        let bip = t.bipartite_between(&vs(3, &[0]), &vs(3, &[1, 2])).unwrap();
        assert_eq!(bip.digraph.arcs().collect::<Vec<_>>(), vec![(0, 1), (2, 0)]);
        let empty = t.bipartite_between(&vs(3, &[]), &vs(3, &[1, 2])).unwrap();
        assert_eq!(empty.digraph.arc_count(), 0);
        assert_eq!(t.bipartite_between(&vs(3, &[0, 1]), &vs(3, &[1])), Err(Error::Overlap(1)));
    }

    #[test]
    fn strong_components_examples() {
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.strong_components(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(triangle().strong_components(), vec![vec![0, 1, 2]]);
        // TT2 => C3 with the triangle on 2,3,4.
        let mut arcs = vec![(0, 1), (2, 3), (3, 4), (4, 2)];
        for a in 0..2 {
            for b in 2..5 {
                arcs.push((a, b));
            }
        }
        let d = Digraph::from_arcs(5, arcs).unwrap();
        assert_eq!(d.strong_components(), vec![vec![0], vec![1], vec![2, 3, 4]]);
    }

    #[test]
    fn shortest_path_prefers_low_indices() {
        let d = Digraph::from_arcs(4, [(0, 2), (0, 1), (1, 3), (2, 3)]).unwrap();
        assert_eq!(d.shortest_path(0, 3), Some(vec![0, 1, 3]));
        assert_eq!(d.shortest_path(3, 0), None);
    }

    #[test]
    fn quasi_transitivity() {
        assert!(triangle().is_quasi_transitive());
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.quasi_transitivity_violation(), Some((0, 1, 2)));
    }
}
