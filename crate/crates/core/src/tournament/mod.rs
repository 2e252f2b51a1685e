//! Polynomial-time acyclic 2-dicolouring of tournaments.
//!
//! A tournament with an acyclic 2-dicolouring is light, so the lightness
//! gate runs first. A strong light tournament is then 2-colourable iff some
//! pair `(s, t)` is nice, meaning it admits an `(s, t)`-colouring: an acyclic
//! 2-dicolouring with `s` and `t` coloured 1 and `N+(s) ∪ N-(t)` coloured 2.
//! Each pair is decided by decomposing around a shortest `(s, t)`-path and
//! chaining the `i`-coherent colourings of overlapping windows.

pub mod coherent;
pub mod decomposition;
pub mod quasi;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::dicolour::{verify_acyclic_dicolouring, Colouring};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub use coherent::{backtrack, dp_filter, enumerate_coherent, is_coherent, CoherentSet};
pub use decomposition::{build_decomposition, BlockDecomposition};
pub use quasi::qt_acyclic_2col;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColourResult {
    Colourable(Colouring),
    /// The arc `uv` has a directed triangle in `N+(v) ∩ N-(u)`, so at least
    /// three colours are needed.
    NotLight(usize, usize),
    /// Light, but some strong component has no nice pair.
    NoNicePair,
}

impl TwoColourResult {
    pub fn colouring(&self) -> Option<&Colouring> {
        match self {
            TwoColourResult::Colourable(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_colourable(&self) -> bool {
        self.colouring().is_some()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// `(s, t)` pairs run through the full pipeline.
    pub pairs: u64,
    /// Candidate window colourings checked against the literal definition.
    pub candidates: u64,
    /// Coherent colourings kept across all windows, before filtering.
    pub coherent: u64,
}

impl Counters {
    fn absorb(&mut self, other: &Counters) {
        self.pairs += other.pairs;
        self.candidates += other.candidates;
        self.coherent += other.coherent;
    }
}

#[derive(Clone, Debug)]
pub struct TwoColourOptions {
    /// Worker threads for the pair loop.
    pub workers: usize,
}

impl Default for TwoColourOptions {
    fn default() -> Self {
        TwoColourOptions { workers: 1 }
    }
}

/// The first arc violating lightness, or `None` when the tournament is light.
pub fn lightness_gate(t: &Digraph) -> Result<Option<(usize, usize)>> {
    t.ensure_tournament()?;
    Ok(t.light_violation())
}

/// Fast validity test for a 2-colouring of a subtournament: no monochromatic
/// directed triangle and no alternating 4-cycle. In a tournament these are
/// the shortest possible witnesses of a bad class or class pair.
pub(crate) fn valid_two_colouring(t: &Digraph, one: &VertexSet, two: &VertexSet) -> bool {
    for class in [one, two] {
        for u in class {
            for v in &(t.out_neighbours(u) & class) {
                if t.out_neighbours(v).intersects(&(t.in_neighbours(u) & class)) {
                    return false;
                }
            }
        }
    }
    for a in one {
        let back = t.in_neighbours(a) & two;
        if back.is_empty() {
            continue;
        }
        for b in &(t.out_neighbours(a) & two) {
            for c in &(t.out_neighbours(b) & one) {
                if t.out_neighbours(c).intersects(&back) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `c` is an `(s, t)`-colouring of `t`.
pub fn is_st_colouring(t: &Digraph, s: usize, target: usize, c: &Colouring) -> Result<bool> {
    if c.colours().iter().any(|&x| x > 2) {
        return Ok(false);
    }
    if c.colour(s) != 1 || c.colour(target) != 1 {
        return Ok(false);
    }
    let forced = t.out_neighbours(s) | t.in_neighbours(target);
    if forced.iter().any(|u| c.colour(u) != 2) {
        return Ok(false);
    }
    Ok(verify_acyclic_dicolouring(t, c)?.is_ok())
}

/// An `(s, t)`-colouring of a strong light tournament, if one exists.
pub fn find_st_colouring(t: &Digraph, s: usize, target: usize) -> Result<Option<Colouring>> {
    t.ensure_tournament()?;
    if !t.is_strong() {
        return Err(Error::NotStrong);
    }
    if let Some((u, v)) = t.light_violation() {
        return Err(Error::NotLight(u, v));
    }
    st_search(t, s, target, &mut Counters::default())
}

fn st_search(t: &Digraph, s: usize, target: usize, counters: &mut Counters) -> Result<Option<Colouring>> {
    counters.pairs += 1;
    let dec = build_decomposition(t, s, target)?;
    let mut first = coherent::enumerate_counting(t, &dec, 0, &mut counters.candidates);
    counters.coherent += first.len() as u64;
    first.star_filtered = true;
    if first.is_empty() {
        return Ok(None);
    }
    let mut stars = vec![first];
    for i in 1..=dec.k() {
        let cur = coherent::enumerate_counting(t, &dec, i, &mut counters.candidates);
        counters.coherent += cur.len() as u64;
        let star = dp_filter(stars.last().expect("non-empty"), cur, &dec);
        if star.is_empty() {
            return Ok(None);
        }
        stars.push(star);
    }
    let Some(one) = backtrack(&stars, &dec)? else {
        return Ok(None);
    };
    let c = Colouring::from_colour_one(&one);
    if !is_st_colouring(t, s, target, &c)? {
        return Err(Error::InvariantBreach(format!(
            "glued colouring for pair ({s}, {target}) is not an (s,t)-colouring"
        )));
    }
    Ok(Some(c))
}

/// Candidate pairs in lexicographic order. A pair with `s -> t` is never
/// nice, since `t` would need both colours.
fn candidate_pairs(t: &Digraph) -> Vec<(usize, usize)> {
    let n = t.n();
    (0..n).flat_map(|s| (0..n).map(move |x| (s, x))).filter(|&(s, x)| s != x && !t.has_arc(s, x)).collect()
}

fn solve_strong(t: &Digraph, opts: &TwoColourOptions, counters: &mut Counters) -> Result<Option<Colouring>> {
    let pairs = candidate_pairs(t);
    if opts.workers <= 1 {
        for &(s, x) in &pairs {
            if let Some(c) = st_search(t, s, x, counters)? {
                return Ok(Some(c));
            }
        }
        return Ok(None);
    }

    let best = AtomicUsize::new(usize::MAX);
    let found: Mutex<Vec<(usize, Colouring)>> = Mutex::new(Vec::new());
    let failure: Mutex<Option<(usize, Error)>> = Mutex::new(None);
    let totals = Mutex::new(Counters::default());
    std::thread::scope(|scope| {
        for w in 0..opts.workers {
            let (pairs, best, found, failure, totals) = (&pairs, &best, &found, &failure, &totals);
            scope.spawn(move || {
                let mut local = Counters::default();
                for idx in (w..pairs.len()).step_by(opts.workers) {
                    if idx > best.load(Ordering::Acquire) {
                        break;
                    }
                    let (s, x) = pairs[idx];
                    match st_search(t, s, x, &mut local) {
                        Ok(Some(c)) => {
                            best.fetch_min(idx, Ordering::AcqRel);
                            found.lock().expect("no poisoned lock").push((idx, c));
                            break;
                        }
                        Ok(None) => {}
                        Err(e) => {
                            let mut slot = failure.lock().expect("no poisoned lock");
                            if slot.as_ref().is_none_or(|(j, _)| idx < *j) {
                                *slot = Some((idx, e));
                            }
                            break;
                        }
                    }
                }
                totals.lock().expect("no poisoned lock").absorb(&local);
            });
        }
    });
    counters.absorb(&totals.into_inner().expect("no poisoned lock"));
    let found = found.into_inner().expect("no poisoned lock");
    let winner = found.into_iter().min_by_key(|(idx, _)| *idx);
    if let Some((fail_idx, e)) = failure.into_inner().expect("no poisoned lock") {
        if winner.as_ref().is_none_or(|(idx, _)| fail_idx < *idx) {
            return Err(e);
        }
    }
    Ok(winner.map(|(_, c)| c))
}

/// Decides whether `t` has an acyclic 2-dicolouring and returns a verified
/// one when it does.
pub fn acyclic_2_dicolour(t: &Digraph) -> Result<TwoColourResult> {
    acyclic_2_dicolour_with(t, &TwoColourOptions::default()).map(|(r, _)| r)
}

pub fn acyclic_2_dicolour_with(t: &Digraph, opts: &TwoColourOptions) -> Result<(TwoColourResult, Counters)> {
    t.ensure_tournament()?;
    let n = t.n();
    let mut counters = Counters::default();
    if n <= 2 {
        return Ok((TwoColourResult::Colourable(Colouring::from_colour_one(&VertexSet::full(n))), counters));
    }
    if let Some((u, v)) = t.light_violation() {
        return Ok((TwoColourResult::NotLight(u, v), counters));
    }
    let mut one = VertexSet::new(n);
    for comp in t.strong_components() {
        if comp.len() < 3 {
            for &v in &comp {
                one.insert(v);
            }
            continue;
        }
        let sub = t.induced_by_list(&comp)?;
        match solve_strong(&sub.digraph, opts, &mut counters)? {
            Some(c) => {
                for (local, &v) in sub.vertices.iter().enumerate() {
                    if c.colour(local) == 1 {
                        one.insert(v);
                    }
                }
            }
            None => return Ok((TwoColourResult::NoNicePair, counters)),
        }
    }
    let c = Colouring::from_colour_one(&one);
    if !verify_acyclic_dicolouring(t, &c)?.is_ok() {
        return Err(Error::InvariantBreach("combined component colouring is not acyclic".into()));
    }
    Ok((TwoColourResult::Colourable(c), counters))
}
