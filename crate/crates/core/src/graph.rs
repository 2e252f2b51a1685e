//! Simple undirected graphs.

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> Self {
        UndirectedGraph { n, m: 0, adj: vec![VertexSet::new(n); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = UndirectedGraph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.adj[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        UndirectedGraph::from_edges(n, edges).expect("complete graph")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        UndirectedGraph::from_edges(a + b, edges).expect("complete bipartite graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        UndirectedGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    pub fn path(n: usize) -> Self {
        UndirectedGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Degeneracy and a min-degree elimination order witnessing it.
    /// Ties go to the lowest index.
    pub fn degeneracy(&self) -> (usize, Vec<usize>) {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut d = 0;
        for _ in 0..self.n {
            let v = (0..self.n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
            d = d.max(deg[v]);
            alive[v] = false;
            order.push(v);
            for w in self.adj[v].iter() {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
        (d, order)
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for v in self.adj[u].iter() {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Split graph test on the degree sequence (Hammer and Simeone).
    pub fn is_split(&self) -> bool {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        let m = (1..=self.n).filter(|&i| d[i - 1] + 1 >= i).max().unwrap_or(0);
        let head: usize = d[..m].iter().sum();
        let tail: usize = d[m..].iter().sum();
        head == m * m.saturating_sub(1) + tail
    }

    /// The graph with `v` removed and the remaining vertices relabelled in order.
    pub fn without_vertex(&self, v: usize) -> UndirectedGraph {
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let edges = self.edges().filter(|&(a, b)| a != v && b != v).map(|(a, b)| (relabel(a), relabel(b)));
        UndirectedGraph::from_edges(self.n - 1, edges).expect("subgraph of a simple graph")
    }
}

impl std::fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UndirectedGraph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_examples() {
        let forest = UndirectedGraph::from_edges(6, [(0, 1), (1, 2), (1, 3), (4, 5)]).unwrap();
        assert_eq!(forest.degeneracy().0, 1);
        assert_eq!(UndirectedGraph::complete(4).degeneracy().0, 3);
        assert_eq!(UndirectedGraph::cycle(5).degeneracy().0, 2);
        assert_eq!(UndirectedGraph::empty(3).degeneracy().0, 0);
    }

    #[test]
    fn rejects_duplicates_either_way() {
        assert_eq!(UndirectedGraph::from_edges(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(UndirectedGraph::from_edges(3, [(1, 1)]), Err(Error::Loop(1)));
    }

    #[test]
    fn split_recognition() {
        assert!(UndirectedGraph::complete(4).is_split());
        assert!(UndirectedGraph::path(3).is_split());
        assert!(!UndirectedGraph::cycle(4).is_split());
        assert!(!UndirectedGraph::cycle(5).is_split());
        // two disjoint edges (2K2) is the other forbidden pattern
        assert!(!UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap().is_split());
    }
}
