//! Naive oracles shared by the integration tests. Nothing here calls the
//! library's algorithms; only its data types are used.

#![allow(dead_code)]

use adicol::random::random_tournament;
use adicol::{Digraph, DigraphBuilder};

/// Kahn's algorithm on an explicit arc list.
pub fn kahn_acyclic(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for (u, v) in arcs {
        out[u].push(v);
        indeg[v] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(u) = stack.pop() {
        removed += 1;
        for &v in &out[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    removed == n
}

/// Every colour class induces an acyclic subdigraph.
pub fn naive_dicolouring(d: &Digraph, colours: &[u32]) -> bool {
    kahn_acyclic(d.n(), d.arcs().filter(|&(u, v)| colours[u] == colours[v]))
}

/// Every class, and the arcs between every pair of classes, are acyclic.
pub fn naive_acyclic_colouring(d: &Digraph, colours: &[u32]) -> bool {
    let k = colours.iter().copied().max().unwrap_or(0);
    for a in 1..=k {
        for b in a..=k {
            let arcs = d.arcs().filter(|&(u, v)| {
                let (x, y) = (colours[u], colours[v]);
                if a == b {
                    x == a && y == a
                } else {
                    (x == a && y == b) || (x == b && y == a)
                }
            });
            if !kahn_acyclic(d.n(), arcs) {
                return false;
            }
        }
    }
    true
}

/// All directed cycles, each listed once from its smallest vertex.
pub fn all_cycles(d: &Digraph) -> Vec<Vec<usize>> {
    fn walk(d: &Digraph, start: usize, path: &mut Vec<usize>, on: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for v in d.out_neighbours(last).iter() {
            if v == start && path.len() >= 2 {
                out.push(path.clone());
            } else if v > start && !on[v] {
                on[v] = true;
                path.push(v);
                walk(d, start, path, on, out);
                path.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..d.n() {
        let mut on = vec![false; d.n()];
        on[s] = true;
        walk(d, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

/// Whether `cycle` is monochromatic or alternates between two colours.
pub fn cycle_violates(cycle: &[usize], colours: &[u32]) -> bool {
    let first = colours[cycle[0]];
    if cycle.iter().all(|&v| colours[v] == first) {
        return true;
    }
    let len = cycle.len();
    let mut used: Vec<u32> = cycle.iter().map(|&v| colours[v]).collect();
    used.sort_unstable();
    used.dedup();
    used.len() == 2 && (0..len).all(|i| colours[cycle[i]] != colours[cycle[(i + 1) % len]])
}

/// Calls `f` on every map `0..n -> 1..=k`.
pub fn for_each_colouring(n: usize, k: u32, mut f: impl FnMut(&[u32])) {
    let mut c = vec![1u32; n];
    loop {
        f(&c);
        let mut i = 0;
        while i < n && c[i] == k {
            c[i] = 1;
            i += 1;
        }
        if i == n {
            return;
        }
        c[i] += 1;
    }
}

/// Least `k` for which some colouring passes `ok`, by exhaustion.
pub fn brute_min(n: usize, ok: impl Fn(&[u32]) -> bool) -> usize {
    if n == 0 {
        return 0;
    }
    for k in 1..=n as u32 {
        let mut found = false;
        for_each_colouring(n, k, |c| found |= !found && ok(c));
        if found {
            return k as usize;
        }
    }
    unreachable!("distinct colours always work")
}

/// Tournament whose `b`-th pair `(u, v)`, `u < v` in lexicographic order, is
/// oriented `u -> v` iff bit `b` of `mask` is set.
pub fn tournament_from_mask(n: usize, mask: u64) -> Digraph {
    let mut b = DigraphBuilder::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                b.arc(u, v).unwrap();
            } else {
                b.arc(v, u).unwrap();
            }
            bit += 1;
        }
    }
    b.build()
}

/// Oriented graph from base-3 digits: absent, `u -> v`, `v -> u`.
pub fn oriented_from_code(n: usize, mut code: u64) -> Digraph {
    let mut b = DigraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            match code % 3 {
                1 => {
                    b.arc(u, v).unwrap();
                }
                2 => {
                    b.arc(v, u).unwrap();
                }
                _ => {}
            }
            code /= 3;
        }
    }
    b.build()
}

/// Independent strong-connectivity check: every vertex reaches and is
/// reached from vertex 0.
pub fn naive_strong(d: &Digraph) -> bool {
    let n = d.n();
    if n == 0 {
        return true;
    }
    let reach = |fwd: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            let arc = |v: usize| if fwd { d.has_arc(u, v) } else { d.has_arc(v, u) };
            let fresh: Vec<usize> = (0..n).filter(|&v| !seen[v] && arc(v)).collect();
            for v in fresh {
                seen[v] = true;
                stack.push(v);
            }
        }
        seen.into_iter().all(|x| x)
    };
    reach(true) && reach(false)
}

/// First strong random tournament on `n` vertices from consecutive seeds.
pub fn strong_tournament(n: usize, seed: u64) -> Digraph {
    (seed..).map(|s| random_tournament(n, s)).find(naive_strong).unwrap()
}

/// Whether the arc `uv` has a directed triangle inside `N+(v) ∩ N-(u)`.
pub fn arc_breaks_lightness(t: &Digraph, u: usize, v: usize) -> bool {
    let inside: Vec<usize> = (0..t.n()).filter(|&w| t.has_arc(v, w) && t.has_arc(w, u)).collect();
    inside
        .iter()
        .any(|&a| inside.iter().any(|&b| inside.iter().any(|&c| t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a))))
}

/// Every `(s, t)`-colouring of `t` as colour vectors, by enumerating all
/// 2-colourings.
pub fn brute_st_colourings(t: &Digraph, s: usize, target: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_colouring(t.n(), 2, |c| {
        if c[s] != 1 || c[target] != 1 {
            return;
        }
        let forced_ok = (0..t.n()).all(|u| !(t.has_arc(s, u) || t.has_arc(u, target)) || c[u] == 2);
        if forced_ok && naive_acyclic_colouring(t, c) {
            out.push(c.to_vec());
        }
    });
    out
}
