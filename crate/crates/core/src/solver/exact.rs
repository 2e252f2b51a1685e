//! Backtracking search for dicolourings, acyclic dicolourings and proper colourings.
//!
//! Vertices are coloured in a fixed order (descending degree). After each
//! assignment the search checks only for violations through the newly
//! coloured vertex, which is sound because a violation in a partial colouring
//! persists in every extension. Colour symmetry is broken by never opening
//! more than one fresh colour at a time.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::dicolour::{verify_acyclic_dicolouring, verify_dicolouring, Colouring};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::tournament;

/// Largest vertex count the bit-parallel engine handles.
pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every class acyclic.
    Di,
    /// Every class and every pair of classes acyclic.
    Acyclic,
    /// Proper colouring of the underlying symmetric relation.
    Proper,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Abort after this many search nodes.
    pub limit: Option<u64>,
    /// Worker threads; `1` keeps the search (and its certificate) deterministic.
    pub parallel: usize,
    /// Decide acyclic 2-colourability of tournaments with the polynomial
    /// algorithm instead of searching.
    pub tournament_prepass: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { limit: None, parallel: 1, tournament_prepass: false }
    }
}

/// Record of the exhausted search showing that `refuted_k` colours do not suffice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundProof {
    pub refuted_k: usize,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub value: usize,
    pub certificate: Option<Colouring>,
    pub lower_bound_proof: Option<LowerBoundProof>,
    /// Total search nodes over all values of `k` tried.
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SolveOutcome {
    Solved(SolveResult),
    ExceedsLimit { nodes: u64, lower_bound: usize },
}

impl SolveOutcome {
    pub fn solved(self) -> Option<SolveResult> {
        match self {
            SolveOutcome::Solved(r) => Some(r),
            SolveOutcome::ExceedsLimit { .. } => None,
        }
    }

    /// The value, panicking if the limit was hit. Convenient in tests.
    pub fn value(&self) -> usize {
        match self {
            SolveOutcome::Solved(r) => r.value,
            SolveOutcome::ExceedsLimit { .. } => panic!("search limit exceeded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Colouring),
    No { nodes: u64 },
    ExceedsLimit { nodes: u64 },
}

/// Bit-level view of the instance in the search order.
struct Engine {
    n: usize,
    mode: Mode,
    /// Vertex (original label) coloured at each depth.
    order: Vec<usize>,
    out: Vec<u128>,
    inn: Vec<u128>,
}

/// Everything reachable from `start` using only vertices of `within`.
#[inline]
fn closure(out: &[u128], start: u128, within: u128) -> u128 {
    let mut seen = start & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u128;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= out[x];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

impl Engine {
    fn new(n: usize, out: Vec<u128>, inn: Vec<u128>, mode: Mode) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse((out[v] | inn[v]).count_ones()), v));
        Engine { n, mode, order, out, inn }
    }

    fn from_digraph(d: &Digraph, mode: Mode) -> Self {
        let n = d.n();
        let mask = |s: &crate::vertex_set::VertexSet| s.iter().fold(0u128, |m, v| m | 1u128 << v);
        let out = (0..n).map(|v| mask(d.out_neighbours(v))).collect();
        let inn = (0..n).map(|v| mask(d.in_neighbours(v))).collect();
        Engine::new(n, out, inn, mode)
    }

    fn from_graph(g: &UndirectedGraph) -> Self {
        let n = g.n();
        let adj: Vec<u128> = (0..n).map(|v| g.neighbours(v).iter().fold(0u128, |m, w| m | 1u128 << w)).collect();
        Engine::new(n, adj.clone(), adj, Mode::Proper)
    }

    /// Whether giving `v` the class `c` (whose current members are `classes[c]`)
    /// keeps the partial colouring valid.
    #[inline]
    fn admissible(&self, v: usize, c: usize, classes: &[u128]) -> bool {
        let class = classes[c];
        match self.mode {
            Mode::Proper => self.out[v] & class == 0,
            Mode::Di => closure(&self.out, self.out[v], class) & self.inn[v] == 0,
            Mode::Acyclic => {
                if closure(&self.out, self.out[v], class) & self.inn[v] != 0 {
                    return false;
                }
                let own = class | 1u128 << v;
                for (c2, &other) in classes.iter().enumerate() {
                    if c2 == c || other.count_ones() < 2 || own.count_ones() < 2 {
                        continue;
                    }
                    if self.alternating_cycle_through(v, own, other) {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Alternating breadth-first search from `v` (in `own`) through `other`.
    #[inline]
    fn alternating_cycle_through(&self, v: usize, own: u128, other: u128) -> bool {
        let mut reach_other = self.out[v] & other;
        let mut reach_own = 0u128;
        let mut frontier_other = reach_other;
        loop {
            if reach_other & self.inn[v] != 0 {
                return true;
            }
            let mut next_own = 0u128;
            let mut f = frontier_other;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next_own |= self.out[x];
            }
            next_own &= own & !reach_own & !(1u128 << v);
            if next_own == 0 {
                return false;
            }
            reach_own |= next_own;
            let mut next_other = 0u128;
            let mut f = next_own;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next_other |= self.out[x];
            }
            next_other &= other & !reach_other;
            if next_other == 0 {
                return false;
            }
            reach_other |= next_other;
            frontier_other = next_other;
        }
    }
}

struct Search<'a> {
    engine: &'a Engine,
    k: usize,
    classes: Vec<u128>,
    colour_of: Vec<usize>,
    nodes: u64,
    limit: u64,
    shared_nodes: Option<&'a AtomicU64>,
    stop: Option<&'a AtomicBool>,
    exceeded: bool,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, used: usize) -> bool {
        if depth == self.engine.n {
            return true;
        }
        if let Some(stop) = self.stop {
            if stop.load(Ordering::Relaxed) {
                return false;
            }
        }
        let v = self.engine.order[depth];
        let max_colour = (used + 1).min(self.k);
        for c in 0..max_colour {
            self.nodes += 1;
            let total = match self.shared_nodes {
                Some(shared) => shared.fetch_add(1, Ordering::Relaxed) + 1,
                None => self.nodes,
            };
            if total > self.limit {
                self.exceeded = true;
                return false;
            }
            if !self.engine.admissible(v, c, &self.classes) {
                continue;
            }
            self.classes[c] |= 1u128 << v;
            self.colour_of[v] = c;
            if self.run(depth + 1, used.max(c + 1)) {
                return true;
            }
            self.classes[c] &= !(1u128 << v);
            if self.exceeded {
                return false;
            }
        }
        false
    }

    fn colouring(&self) -> Colouring {
        let colours = self.colour_of.iter().map(|&c| c as u32 + 1).collect();
        Colouring::new(colours, self.k as u32).expect("search colours are in range")
    }
}

/// Partial assignments of the first few vertices, used to split work.
fn prefixes(engine: &Engine, k: usize, wanted: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    let mut depth = 0;
    while layer.len() < wanted && depth < engine.n {
        let v = engine.order[depth];
        let mut next = Vec::new();
        for prefix in &layer {
            let mut classes = vec![0u128; k];
            for (d, &c) in prefix.iter().enumerate() {
                classes[c] |= 1u128 << engine.order[d];
            }
            let used = prefix.iter().map(|&c| c + 1).max().unwrap_or(0);
            for c in 0..(used + 1).min(k) {
                if engine.admissible(v, c, &classes) {
                    let mut p = prefix.clone();
                    p.push(c);
                    next.push(p);
                }
            }
        }
        layer = next;
        depth += 1;
    }
    layer
}

fn decide_engine(engine: &Engine, k: usize, opts: &SolveOptions) -> Decision {
    let n = engine.n;
    if n == 0 {
        return Decision::Yes(Colouring::new(Vec::new(), k as u32).expect("empty colouring"));
    }
    if k == 0 {
        return Decision::No { nodes: 0 };
    }
    let limit = opts.limit.unwrap_or(u64::MAX);
    if opts.parallel <= 1 {
        let mut s = Search {
            engine,
            k,
            classes: vec![0; k],
            colour_of: vec![0; n],
            nodes: 0,
            limit,
            shared_nodes: None,
            stop: None,
            exceeded: false,
        };
        return if s.run(0, 0) {
            Decision::Yes(s.colouring())
        } else if s.exceeded {
            Decision::ExceedsLimit { nodes: s.nodes }
        } else {
            Decision::No { nodes: s.nodes }
        };
    }

    let work = prefixes(engine, k, opts.parallel * 8);
    let next = AtomicUsize::new(0);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let exceeded = AtomicBool::new(false);
    let found: Mutex<Option<Colouring>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..opts.parallel {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= work.len() || stop.load(Ordering::Relaxed) {
                    return;
                }
                let prefix = &work[i];
                let mut s = Search {
                    engine,
                    k,
                    classes: vec![0; k],
                    colour_of: vec![0; n],
                    nodes: 0,
                    limit,
                    shared_nodes: Some(&nodes),
                    stop: Some(&stop),
                    exceeded: false,
                };
                for (d, &c) in prefix.iter().enumerate() {
                    let v = engine.order[d];
                    s.classes[c] |= 1u128 << v;
                    s.colour_of[v] = c;
                }
                let used = prefix.iter().map(|&c| c + 1).max().unwrap_or(0);
                if s.run(prefix.len(), used) {
                    *found.lock().expect("result lock") = Some(s.colouring());
                    stop.store(true, Ordering::Relaxed);
                    return;
                }
                if s.exceeded {
                    exceeded.store(true, Ordering::Relaxed);
                    stop.store(true, Ordering::Relaxed);
                    return;
                }
            });
        }
    });
    let nodes = nodes.into_inner();
    match found.into_inner().expect("result lock") {
        Some(c) => Decision::Yes(c),
        None if exceeded.into_inner() => Decision::ExceedsLimit { nodes },
        None => Decision::No { nodes },
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { n, max: MAX_VERTICES });
    }
    Ok(())
}

fn check_certificate(d: &Digraph, mode: Mode, c: &Colouring) -> Result<()> {
    let ok = match mode {
        Mode::Di => verify_dicolouring(d, c)?.is_ok(),
        Mode::Acyclic => verify_acyclic_dicolouring(d, c)?.is_ok(),
        Mode::Proper => unreachable!("digraph certificates are never proper-mode"),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantBreach("search produced an invalid colouring".into()))
    }
}

/// Decides whether `d` has a `k`-colouring of the given kind.
pub fn decide(d: &Digraph, k: usize, mode: Mode, opts: &SolveOptions) -> Result<Decision> {
    if mode == Mode::Acyclic {
        d.ensure_oriented()?;
    }
    if mode == Mode::Proper {
        return Err(Error::InvalidArgument("proper colouring takes an undirected graph".into()));
    }
    if k >= 1 && d.is_acyclic() {
        return Ok(Decision::Yes(Colouring::new(vec![1; d.n()], k as u32).expect("k >= 1")));
    }
    if mode == Mode::Acyclic && k == 2 && opts.tournament_prepass && d.is_tournament() {
        return Ok(match tournament::acyclic_2_dicolour(d)? {
            tournament::TwoColourResult::Colourable(c) => Decision::Yes(c),
            _ => Decision::No { nodes: 0 },
        });
    }
    check_size(d.n())?;
    let decision = decide_engine(&Engine::from_digraph(d, mode), k, opts);
    if let Decision::Yes(c) = &decision {
        check_certificate(d, mode, c)?;
    }
    Ok(decision)
}

fn minimise(n: usize, lower: usize, mut decide_k: impl FnMut(usize) -> Result<Decision>) -> Result<SolveOutcome> {
    let mut total = 0;
    let mut proof = None;
    for k in lower.max(1)..=n.max(1) {
        match decide_k(k)? {
            Decision::Yes(c) => {
                return Ok(SolveOutcome::Solved(SolveResult {
                    value: k,
                    certificate: Some(c),
                    lower_bound_proof: proof,
                    nodes: total,
                }));
            }
            Decision::No { nodes } => {
                total += nodes;
                proof = Some(LowerBoundProof { refuted_k: k, nodes });
            }
            Decision::ExceedsLimit { nodes } => {
                return Ok(SolveOutcome::ExceedsLimit { nodes: total + nodes, lower_bound: k });
            }
        }
    }
    Err(Error::InvariantBreach("no colouring with one colour per vertex".into()))
}

fn number(d: &Digraph, mode: Mode, opts: &SolveOptions) -> Result<SolveOutcome> {
    if mode == Mode::Acyclic {
        d.ensure_oriented()?;
    }
    if d.n() == 0 {
        return Ok(SolveOutcome::Solved(SolveResult {
            value: 0,
            certificate: Some(Colouring::new(Vec::new(), 0).expect("empty")),
            lower_bound_proof: None,
            nodes: 0,
        }));
    }
    let mut remaining = opts.limit;
    minimise(d.n(), 1, |k| {
        let step = SolveOptions { limit: remaining, ..opts.clone() };
        let decision = decide(d, k, mode, &step)?;
        if let (Some(r), Decision::No { nodes }) = (remaining.as_mut(), &decision) {
            *r = r.saturating_sub(*nodes);
        }
        Ok(decision)
    })
}

/// The dichromatic number. Digons are allowed and force their ends apart.
pub fn dichromatic_number(d: &Digraph, opts: &SolveOptions) -> Result<SolveOutcome> {
    number(d, Mode::Di, opts)
}

/// The acyclic dichromatic number of an oriented graph.
pub fn acyclic_dichromatic_number(d: &Digraph, opts: &SolveOptions) -> Result<SolveOutcome> {
    number(d, Mode::Acyclic, opts)
}

/// An acyclic `k`-dicolouring, or `None` if there is none.
pub fn is_acyclic_k_dicolourable(d: &Digraph, k: usize) -> Result<Option<Colouring>> {
    match decide(d, k, Mode::Acyclic, &SolveOptions::default())? {
        Decision::Yes(c) => Ok(Some(c)),
        Decision::No { .. } => Ok(None),
        Decision::ExceedsLimit { .. } => unreachable!("no limit was set"),
    }
}

pub fn is_k_dicolourable(d: &Digraph, k: usize) -> Result<Option<Colouring>> {
    match decide(d, k, Mode::Di, &SolveOptions::default())? {
        Decision::Yes(c) => Ok(Some(c)),
        Decision::No { .. } => Ok(None),
        Decision::ExceedsLimit { .. } => unreachable!("no limit was set"),
    }
}

fn is_proper(g: &UndirectedGraph, c: &Colouring) -> bool {
    c.len() == g.n() && g.edges().all(|(u, v)| c.colour(u) != c.colour(v))
}

pub fn chromatic_number(g: &UndirectedGraph, opts: &SolveOptions) -> Result<SolveOutcome> {
    if g.n() == 0 {
        return Ok(SolveOutcome::Solved(SolveResult {
            value: 0,
            certificate: Some(Colouring::new(Vec::new(), 0).expect("empty")),
            lower_bound_proof: None,
            nodes: 0,
        }));
    }
    check_size(g.n())?;
    let engine = Engine::from_graph(g);
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    let outcome = minimise(g.n(), lower, |k| Ok(decide_engine(&engine, k, opts)))?;
    if let SolveOutcome::Solved(r) = &outcome {
        if !r.certificate.as_ref().is_some_and(|c| is_proper(g, c)) {
            return Err(Error::InvariantBreach("search produced an improper colouring".into()));
        }
    }
    Ok(outcome)
}

/// Whether `chi_a(T) = k` and deleting any vertex leaves at most `k - 1`.
/// Checked by brute force over the `n` single-vertex deletions, which covers
/// every proper subtournament by monotonicity.
pub fn is_k_critical(t: &Digraph, k: usize) -> Result<bool> {
    t.ensure_tournament()?;
    if acyclic_dichromatic_number(t, &SolveOptions::default())?.value() != k {
        return Ok(false);
    }
    for v in 0..t.n() {
        let sub = t.without_vertex(v)?.digraph;
        let value = acyclic_dichromatic_number(&sub, &SolveOptions::default())?.value();
        if value > k.saturating_sub(1) {
            return Ok(false);
        }
    }
    Ok(true)
}
