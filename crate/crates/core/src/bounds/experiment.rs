//! Partitionability of vertex subsets in random tournaments.
//!
//! A set is partitionable when it splits into blocks of size 2 or 3 whose
//! pairwise bipartite subtournaments are all acyclic. The exact probability
//! that one such pair is acyclic comes from counting acyclic orientations of
//! `K_{a,b}`; for a fixed block collection the pair events are independent,
//! which gives the closed form [`g`].

use rand::seq::index::sample;
use serde::Serialize;

use crate::dicolour::{small_bipartite_acyclic, verify_acyclic_partition, AcyclicPartition};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::random::{random_tournament_with, rng};
use crate::solver::count_acyclic_orientations;

pub const MAX_ELL: usize = 12;
pub const MAX_N: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        let g = gcd(num, den).max(1);
        Fraction { num: num / g, den: den / g }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Probability that a uniformly random orientation of `K_{a,b}` is acyclic.
pub fn pair_acyclic_probability(a: usize, b: usize) -> Result<Fraction> {
    if a * b > 63 {
        return Err(Error::GuardExceeded(format!("K_{{{a},{b}}} has too many edges")));
    }
    let acyclic = count_acyclic_orientations(&UndirectedGraph::complete_bipartite(a, b))?;
    Ok(Fraction::new(acyclic, 1 << (a * b)))
}

/// `(7/8)^{k2(k2-1)/2} (23/32)^{k2 k3} (115/256)^{k3(k3-1)/2}`.
pub fn g(k2: usize, k3: usize) -> f64 {
    let pairs = |k: usize| (k * k.saturating_sub(1) / 2) as i32;
    (7.0f64 / 8.0).powi(pairs(k2)) * (23.0f64 / 32.0).powi((k2 * k3) as i32) * (115.0f64 / 256.0).powi(pairs(k3))
}

/// An acyclic partition covering exactly `x`, if one exists. Blocks are
/// enumerated in canonical form: each new block starts at the smallest
/// uncovered vertex.
pub fn is_partitionable(t: &Digraph, x: &[usize]) -> Result<Option<AcyclicPartition>> {
    t.ensure_tournament()?;
    if x.len() > MAX_ELL {
        return Err(Error::GuardExceeded(format!("subset of size {} above {MAX_ELL}", x.len())));
    }
    let mut seen = vec![false; t.n()];
    for &v in x {
        t.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::DuplicateVertex(v));
        }
    }
    let mut rest: Vec<usize> = x.to_vec();
    rest.sort_unstable();
    let mut blocks = Vec::new();
    if search(t, &mut rest, &mut blocks) {
        let p = AcyclicPartition { blocks };
        debug_assert!(verify_acyclic_partition(t, &p).unwrap_or(false));
        Ok(Some(p))
    } else {
        Ok(None)
    }
}

fn search(t: &Digraph, rest: &mut Vec<usize>, blocks: &mut Vec<Vec<usize>>) -> bool {
    if rest.is_empty() {
        return true;
    }
    let head = rest[0];
    let m = rest.len();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for &v in &rest[1..] {
        candidates.push(vec![head, v]);
    }
    for i in 1..m {
        for j in i + 1..m {
            candidates.push(vec![head, rest[i], rest[j]]);
        }
    }
    for block in candidates {
        if !blocks.iter().all(|b| small_bipartite_acyclic(t, b, &block)) {
            continue;
        }
        let saved = rest.clone();
        rest.retain(|v| !block.contains(v));
        blocks.push(block);
        if search(t, rest, blocks) {
            return true;
        }
        blocks.pop();
        *rest = saved;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentParams {
    pub ell: usize,
    pub trials: u64,
}

/// JSON shape: `{kind, n, params, value, frequency, ci95, seed}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub kind: String,
    pub n: usize,
    pub params: ExperimentParams,
    /// Number of trials whose sampled subset was partitionable.
    pub value: u64,
    pub frequency: f64,
    /// Normal-approximation 95% interval, clamped to `[0, 1]`.
    pub ci95: [f64; 2],
    pub seed: u64,
}

fn ci95(hits: u64, trials: u64) -> [f64; 2] {
    if trials == 0 {
        return [0.0, 1.0];
    }
    let p = hits as f64 / trials as f64;
    let half = 1.96 * (p * (1.0 - p) / trials as f64).sqrt();
    [(p - half).max(0.0), (p + half).min(1.0)]
}

fn partitionable_trial(n: usize, ell: usize, seed: u64, trial: u64) -> Result<bool> {
    let mut r = rng(seed, trial);
    let t = random_tournament_with(n, &mut r);
    let x = sample(&mut r, n, ell).into_vec();
    Ok(is_partitionable(&t, &x)?.is_some())
}

/// Samples a random tournament on `n` vertices and a random `ell`-subset per
/// trial, and counts how often the subset is partitionable. Trial `i` draws
/// from stream `i` of `seed`, so the result does not depend on `workers`.
pub fn partitionability_experiment(
    n: usize,
    ell: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    if n > MAX_N || ell > MAX_ELL {
        return Err(Error::GuardExceeded(format!("experiment limited to n <= {MAX_N}, ell <= {MAX_ELL}")));
    }
    if ell > n {
        return Err(Error::InvalidArgument(format!("ell = {ell} exceeds n = {n}")));
    }
    let workers = workers.max(1) as u64;
    let hits = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || -> Result<u64> {
                    let mut hits = 0;
                    for trial in (w..trials).step_by(workers as usize) {
                        hits += partitionable_trial(n, ell, seed, trial)? as u64;
                    }
                    Ok(hits)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum::<Result<u64>>()
    })?;
    Ok(ExperimentReport {
        kind: "partitionable".into(),
        n,
        params: ExperimentParams { ell, trials },
        value: hits,
        frequency: if trials == 0 { 0.0 } else { hits as f64 / trials as f64 },
        ci95: ci95(hits, trials),
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub k2: usize,
    pub k3: usize,
    pub trials: u64,
    pub hits: u64,
    pub frequency: f64,
    /// The closed form `g(k2, k3)`.
    pub expected: f64,
    /// Standard deviation of the frequency under the closed form.
    pub sigma: f64,
}

impl MonteCarlo {
    /// `|frequency - expected|` in units of `sigma`.
    pub fn deviation(&self) -> f64 {
        if self.sigma == 0.0 {
            return if self.frequency == self.expected { 0.0 } else { f64::INFINITY };
        }
        (self.frequency - self.expected).abs() / self.sigma
    }
}

/// Fixes `k2` blocks of size 2 followed by `k3` blocks of size 3 on
/// `0..2k2+3k3`, and measures how often they form an acyclic partition of a
/// random tournament on those vertices.
pub fn candidate_monte_carlo(k2: usize, k3: usize, trials: u64, seed: u64) -> Result<MonteCarlo> {
    let ell = 2 * k2 + 3 * k3;
    if ell > 64 {
        return Err(Error::GuardExceeded(format!("{ell} vertices in the candidate")));
    }
    let mut blocks = Vec::new();
    let mut next = 0;
    for size in std::iter::repeat_n(2, k2).chain(std::iter::repeat_n(3, k3)) {
        blocks.push((next..next + size).collect());
        next += size;
    }
    let p = AcyclicPartition { blocks };
    let mut hits = 0;
    for trial in 0..trials {
        let t = random_tournament_with(ell, &mut rng(seed, trial));
        hits += verify_acyclic_partition(&t, &p)? as u64;
    }
    let expected = g(k2, k3);
    let frequency = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
    let sigma = if trials == 0 { 0.0 } else { (expected * (1.0 - expected) / trials as f64).sqrt() };
    Ok(MonteCarlo { k2, k3, trials, hits, frequency, expected, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_probabilities() {
        assert_eq!(pair_acyclic_probability(2, 2).unwrap(), Fraction::new(7, 8));
        assert_eq!(pair_acyclic_probability(2, 3).unwrap(), Fraction::new(23, 32));
        assert_eq!(pair_acyclic_probability(3, 3).unwrap(), Fraction::new(115, 256));
    }

    #[test]
    fn g_on_single_pairs() {
        assert!((g(2, 0) - 7.0 / 8.0).abs() < 1e-15);
        assert!((g(1, 1) - 23.0 / 32.0).abs() < 1e-15);
        assert!((g(0, 2) - 115.0 / 256.0).abs() < 1e-15);
        assert_eq!(g(1, 0), 1.0);
    }

    #[test]
    fn partitionable_edge_cases() {
        let t = crate::random::random_tournament(8, 1);
        assert!(is_partitionable(&t, &[]).unwrap().is_some());
        assert!(is_partitionable(&t, &[3]).unwrap().is_none());
        assert!(is_partitionable(&t, &[3, 5]).unwrap().is_some());
        assert!(is_partitionable(&t, &[3, 5, 1]).unwrap().is_some());
        assert!(matches!(is_partitionable(&t, &[3, 3]), Err(Error::DuplicateVertex(3))));
    }

    #[test]
    fn experiment_is_independent_of_workers() {
        let a = partitionability_experiment(12, 8, 40, 5, 1).unwrap();
        let b = partitionability_experiment(12, 8, 40, 5, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.ci95[0] <= a.frequency && a.frequency <= a.ci95[1]);
        assert!(partitionability_experiment(31, 8, 1, 0, 1).is_err());
    }
}
