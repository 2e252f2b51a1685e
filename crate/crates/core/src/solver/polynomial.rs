//! Chromatic polynomials by deletion–contraction, and acyclic orientation counts.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

pub const MAX_VERTICES: usize = 20;
pub const MAX_EDGES: usize = 40;
/// Orientations are enumerated directly up to this many edges.
pub const ENUMERATION_EDGES: usize = 20;

/// Integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        Polynomial { coeffs }
    }

    /// `x (x - 1) ... (x - n + 1)`
    pub fn falling_factorial(n: usize) -> Self {
        (0..n).fold(Polynomial::new(vec![1]), |acc, i| &acc * &Polynomial::new(vec![-(i as i64), 1]))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        Polynomial::new((0..len).map(|i| get(self, i) - get(rhs, i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (deg, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{deg}")?,
                _ => write!(f, "{a}x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Adjacency rows as bit masks; vertex `i` is bit `i`.
type Rows = Vec<u32>;

fn drop_vertex(rows: &mut Rows, v: usize) {
    rows.remove(v);
    let low = (1u32 << v) - 1;
    for r in rows.iter_mut() {
        *r = (*r & low) | ((*r >> (v + 1)) << v);
    }
}

fn chromatic_rows(rows: Rows, memo: &mut HashMap<Rows, Polynomial>) -> Polynomial {
    let n = rows.len();
    // isolated vertices each contribute a factor x
    if let Some(v) = rows.iter().position(|&r| r == 0) {
        let mut rest = rows;
        drop_vertex(&mut rest, v);
        return &Polynomial::monomial(1) * &chromatic_rows(rest, memo);
    }
    if n == 0 {
        return Polynomial::new(vec![1]);
    }
    let edges: u32 = rows.iter().map(|r| r.count_ones()).sum::<u32>() / 2;
    if edges as usize == n * (n - 1) / 2 {
        return Polynomial::falling_factorial(n);
    }
    if let Some(p) = memo.get(&rows) {
        return p.clone();
    }
    let u = (0..n).min_by_key(|&v| (rows[v].count_ones(), v)).expect("non-empty");
    let v = rows[u].trailing_zeros() as usize;

    let mut deleted = rows.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);

    let mut contracted = deleted.clone();
    let merged = contracted[v];
    contracted[u] |= merged;
    for (w, row) in contracted.iter_mut().enumerate().take(n) {
        if merged >> w & 1 == 1 {
            *row |= 1 << u;
        }
    }
    drop_vertex(&mut contracted, v);

    let p = &chromatic_rows(deleted, memo) - &chromatic_rows(contracted, memo);
    memo.insert(rows, p.clone());
    p
}

fn rows_of(g: &UndirectedGraph) -> Rows {
    (0..g.n()).map(|v| g.neighbours(v).iter().fold(0u32, |m, w| m | 1 << w)).collect()
}

fn guard(g: &UndirectedGraph) -> Result<()> {
    if g.n() > MAX_VERTICES || g.edge_count() > MAX_EDGES {
        return Err(Error::GuardExceeded(format!(
            "chromatic polynomial limited to {MAX_VERTICES} vertices and {MAX_EDGES} edges (got {} and {})",
            g.n(),
            g.edge_count()
        )));
    }
    Ok(())
}

pub fn chromatic_polynomial(g: &UndirectedGraph) -> Result<Polynomial> {
    guard(g)?;
    Ok(chromatic_rows(rows_of(g), &mut HashMap::new()))
}

/// Counts acyclic orientations by trying all `2^|E|` of them.
pub fn enumerate_acyclic_orientations(g: &UndirectedGraph) -> Result<u64> {
    if g.edge_count() > ENUMERATION_EDGES || g.n() > 32 {
        return Err(Error::GuardExceeded(format!("orientation enumeration limited to {ENUMERATION_EDGES} edges")));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let n = g.n();
    let mut count = 0;
    let mut out = vec![0u32; n];
    for mask in 0u64..1 << edges.len() {
        out.iter_mut().for_each(|r| *r = 0);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out[u] |= 1 << v;
            } else {
                out[v] |= 1 << u;
            }
        }
        if mask_acyclic(&out) {
            count += 1;
        }
    }
    Ok(count)
}

/// Repeatedly strips sinks.
fn mask_acyclic(out: &[u32]) -> bool {
    let mut alive: u32 = if out.len() == 32 { !0 } else { (1u32 << out.len()) - 1 };
    while alive != 0 {
        let mut progress = false;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if out[v] & alive == 0 {
                alive &= !(1 << v);
                progress = true;
            }
        }
        if !progress {
            return false;
        }
    }
    true
}

/// `|P(G, -1)|`, cross-checked by direct enumeration when `|E| <= 20`.
pub fn count_acyclic_orientations(g: &UndirectedGraph) -> Result<u64> {
    let by_polynomial = chromatic_polynomial(g)?.eval(-1).unsigned_abs() as u64;
    if g.edge_count() <= ENUMERATION_EDGES {
        let by_enumeration = enumerate_acyclic_orientations(g)?;
        if by_enumeration != by_polynomial {
            return Err(Error::InvariantBreach(format!(
                "acyclic orientation count mismatch: polynomial {by_polynomial}, enumeration {by_enumeration}"
            )));
        }
    }
    Ok(by_polynomial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        let p = Polynomial::new(vec![0, -3, 6, -4, 1]);
        assert_eq!(p.to_string(), "x^4 - 4x^3 + 6x^2 - 3x");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::new(vec![-1, 1]).to_string(), "x - 1");
    }

    #[test]
    fn small_families() {
        // P(K_n) is the falling factorial, P(tree on n) = x (x-1)^(n-1), P(C_n) = (x-1)^n + (-1)^n (x-1)
        assert_eq!(chromatic_polynomial(&UndirectedGraph::complete(4)).unwrap(), Polynomial::falling_factorial(4));
        let path = chromatic_polynomial(&UndirectedGraph::path(4)).unwrap();
        assert_eq!(path.coeffs(), &[0, -1, 3, -3, 1]);
        let c5 = chromatic_polynomial(&UndirectedGraph::cycle(5)).unwrap();
        for x in 0..6i64 {
            assert_eq!(c5.eval(x), ((x - 1) as i128).pow(5) - (x - 1) as i128);
        }
        assert_eq!(chromatic_polynomial(&UndirectedGraph::empty(3)).unwrap(), Polynomial::monomial(3));
    }

    #[test]
    fn guard_refuses_large_graphs() {
        assert!(matches!(chromatic_polynomial(&UndirectedGraph::complete(21)), Err(Error::GuardExceeded(_))));
        assert!(matches!(chromatic_polynomial(&UndirectedGraph::complete(10)), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn acyclic_orientations_of_complete_graphs_are_permutations() {
        assert_eq!(count_acyclic_orientations(&UndirectedGraph::complete(4)).unwrap(), 24);
        assert_eq!(count_acyclic_orientations(&UndirectedGraph::complete(5)).unwrap(), 120);
        assert_eq!(count_acyclic_orientations(&UndirectedGraph::cycle(6)).unwrap(), 62);
    }
}
