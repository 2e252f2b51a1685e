//! The path-and-blocks decomposition of a strong tournament around a pair `(s, t)`.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// `P = v_0 .. v_l` a shortest `(s, t)`-path, `X_0 .. X_{l+1}` the blocks
/// hanging off it, `Y_i` each block with its path endpoints, and `Z_i` windows
/// of seven consecutive `Y`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub s: usize,
    pub t: usize,
    pub path: Vec<usize>,
    pub x: Vec<VertexSet>,
    pub y: Vec<VertexSet>,
    pub z: Vec<VertexSet>,
    /// Acyclic order of `T[X_j]` for `1 <= j <= l`; empty for `X_0` and `X_{l+1}`.
    pub x_order: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    /// Path length `l`.
    pub fn ell(&self) -> usize {
        self.path.len() - 1
    }

    /// Index of the last window, `max(0, l - 5)`.
    pub fn k(&self) -> usize {
        self.z.len() - 1
    }

    pub fn path_set(&self, n: usize) -> VertexSet {
        VertexSet::from_members(n, self.path.iter().copied())
    }

    /// Indices `j` with `Y_j ⊆ Z_i`.
    pub fn blocks_in(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        if self.ell() < 5 {
            0..=self.ell() + 1
        } else {
            i..=i + 6
        }
    }

    /// Checks the structural properties; acyclicity of the inner blocks only
    /// when `light` is set, since it relies on lightness.
    pub fn check(&self, t: &Digraph, light: bool) -> Result<()> {
        let breach = |what: &str| Err(Error::InvariantBreach(format!("decomposition: {what}")));
        let n = t.n();
        let l = self.ell();
        if self.path.first() != Some(&self.s) || self.path.last() != Some(&self.t) {
            return breach("path endpoints");
        }
        if self.path.windows(2).any(|w| !t.has_arc(w[0], w[1])) {
            return breach("path is not directed");
        }
        if t.shortest_path(self.s, self.t).map(|p| p.len()) != Some(self.path.len()) {
            return breach("path is not shortest");
        }
        if !self.x[0].is_subset(t.out_neighbours(self.s)) || !self.x[l + 1].is_subset(t.in_neighbours(self.t)) {
            return breach("(i)");
        }
        for i in 1..=l {
            let allowed = t.out_neighbours(self.path[i]) & t.in_neighbours(self.path[i - 1]);
            if !self.x[i].is_subset(&allowed) {
                return breach("(ii)");
            }
            if light && !t.is_acyclic_within(&self.x[i]) {
                return breach("(iii)");
            }
        }
        let mut seen = self.path_set(n);
        if seen.len() != self.path.len() {
            return breach("path repeats a vertex");
        }
        for xi in &self.x {
            if seen.intersects(xi) {
                return breach("(iv) blocks overlap");
            }
            seen.union_with(xi);
        }
        if seen.len() != n {
            return breach("(iv) blocks do not cover");
        }
        let mut covered = VertexSet::new(n);
        for z in &self.z {
            covered.union_with(z);
        }
        if covered.len() != n {
            return breach("windows do not cover");
        }
        Ok(())
    }
}

/// Builds the decomposition for a strong tournament. Fails with
/// [`Error::NotLight`] when some inner block `X_i` has a cycle, which
/// exhibits the arc `v_{i-1} v_i` as a lightness violation.
pub fn build_decomposition(t: &Digraph, s: usize, target: usize) -> Result<BlockDecomposition> {
    t.ensure_tournament()?;
    t.check_vertex(s)?;
    t.check_vertex(target)?;
    if s == target {
        return Err(Error::InvalidArgument("s and t must differ".into()));
    }
    let n = t.n();
    let path = t.shortest_path(s, target).ok_or(Error::NotStrong)?;
    let l = path.len() - 1;
    let mut taken = VertexSet::from_members(n, path.iter().copied());

    let mut x = Vec::with_capacity(l + 2);
    for &v in &path {
        let xi = t.out_neighbours(v) - &taken;
        taken.union_with(&xi);
        x.push(xi);
    }
    let last = t.in_neighbours(target) - &taken;
    taken.union_with(&last);
    x.push(last);

    let mut x_order = vec![Vec::new(); l + 2];
    for i in 1..=l {
        match t.topological_order_within(&x[i]) {
            Some(order) => x_order[i] = order,
            None => return Err(Error::NotLight(path[i - 1], path[i])),
        }
    }

    let mut y = Vec::with_capacity(l + 2);
    for (j, xj) in x.iter().enumerate() {
        let mut yj = xj.clone();
        if j >= 1 {
            yj.insert(path[j - 1]);
        }
        if j <= l {
            yj.insert(path[j]);
        }
        y.push(yj);
    }

    let z = if l < 5 {
        let mut all = VertexSet::new(n);
        for yj in &y {
            all.union_with(yj);
        }
        vec![all]
    } else {
        (0..=l - 5)
            .map(|i| {
                let mut zi = VertexSet::new(n);
                for yj in &y[i..=i + 6] {
                    zi.union_with(yj);
                }
                zi
            })
            .collect()
    };

    let dec = BlockDecomposition { s, t: target, path, x, y, z, x_order };
    dec.check(t, true)?;
    Ok(dec)
}
