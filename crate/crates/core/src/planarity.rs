//! Planarity testing by path embedding (Demoucron, Malgrange and Pertuiset).
//!
//! Quadratic-ish and meant for gadget-sized graphs. A graph is planar iff each
//! of its biconnected blocks is, so blocks are embedded independently.

use std::collections::HashSet;

use crate::graph::UndirectedGraph;

pub fn is_planar(g: &UndirectedGraph) -> bool {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|edges| block_is_planar(&edges))
}

/// Edge sets of the biconnected components.
fn blocks(g: &UndirectedGraph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbours(v).to_vec()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut call = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    call.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(edges: &[(usize, usize)]) -> bool {
    if edges.len() < 3 {
        return true;
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let n = verts.len();
    if edges.len() > 3 * n - 6 {
        return false;
    }
    let local = |v: usize| verts.binary_search(&v).expect("block vertex");
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        in_h[cycle[i]] = true;
        h_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle];

    loop {
        let fragments = fragments(&adj, &in_h, &h_edges);
        if fragments.is_empty() {
            return true;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&f| frag.contacts.iter().all(|c| faces[f].contains(c))).collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_index) = choice.expect("some fragment was examined");
        let path = fragment_path(&adj, &in_h, &fragments[fi]);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_index);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    let mut stack = vec![(0usize, 0usize)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if *next < adj[v].len() {
            let w = adj[v][*next];
            *next += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur];
                    cycle.push(cur);
                }
                return cycle;
            }
        } else {
            stack.pop();
        }
    }
    unreachable!("a biconnected block with three or more edges has a cycle")
}

struct Fragment {
    contacts: Vec<usize>,
    /// Interior vertices; empty for a single chord between embedded vertices.
    interior: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edges: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        if !in_h[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && in_h[b] && !h_edges.contains(&(a, b)) {
                out.push(Fragment { contacts: vec![a, b], interior: Vec::new(), chord: Some((a, b)) });
            }
        }
    }
    let mut seen = vec![false; n];
    for root in 0..n {
        if in_h[root] || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut interior = vec![root];
        let mut contacts = Vec::new();
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if in_h[w] {
                    if !contacts.contains(&w) {
                        contacts.push(w);
                    }
                } else if !seen[w] {
                    seen[w] = true;
                    interior.push(w);
                    stack.push(w);
                }
            }
        }
        out.push(Fragment { contacts, interior, chord: None });
    }
    out
}

/// A path through the fragment between two distinct contact vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let start = frag.contacts[0];
    let n = adj.len();
    let inside: HashSet<usize> = frag.interior.iter().copied().collect();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[start] {
        if inside.contains(&w) && parent[w] == usize::MAX {
            parent[w] = start;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if in_h[w] && w != start {
                let mut path = vec![w, v];
                let mut cur = v;
                while parent[cur] != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.push(start);
                path.reverse();
                return path;
            }
            if inside.contains(&w) && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected block have two contacts")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().expect("non-empty path");
    let ia = face.iter().position(|&v| v == a).expect("path starts on the face");
    let rotated: Vec<usize> = face[ia..].iter().chain(&face[..ia]).copied().collect();
    let ib = rotated.iter().position(|&v| v == b).expect("path ends on the face");
    let interior = &path[1..path.len() - 1];
    let mut f1 = rotated[..=ib].to_vec();
    f1.extend(interior.iter().rev());
    let mut f2 = rotated[ib..].to_vec();
    f2.push(a);
    f2.extend(interior);
    (f1, f2)
}
