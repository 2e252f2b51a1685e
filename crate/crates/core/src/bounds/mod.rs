//! Constructive upper bounds and the random experiments around the lower bound.
//!
//! Logarithms are base 2 throughout.

pub mod degenerate;
pub mod experiment;
pub mod matching;

use serde::Serialize;

use crate::dicolour::{verify_acyclic_dicolouring, Colouring};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub use degenerate::{partition_to_2colouring, reverse_between, two_degenerate_partition};
pub use experiment::{
    candidate_monte_carlo, g, is_partitionable, pair_acyclic_probability, partitionability_experiment,
    ExperimentReport, Fraction, MonteCarlo,
};
pub use matching::{greedy_acyclic_matching, matching_to_colouring};

/// `1 / log(4/3)`.
pub const ALPHA: f64 = 2.409_420_839_653_209_5;
/// `8 / log(8/7)`.
pub const BETA: f64 = 41.527_144_557_475_47;
/// Slack used when comparing an integer against `f(n)`.
pub const MARGIN: f64 = 1e-9;

/// `f(x) = ALPHA log x - 27 (1 - 1/x)`, the guaranteed matching size.
pub fn f(x: f64) -> f64 {
    ALPHA * x.log2() - 27.0 * (1.0 - 1.0 / x)
}

/// The least matching size that meets `f(n)`: `ceil(f(n) - MARGIN)`, at least 0.
pub fn matching_guarantee(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (f(n as f64) - MARGIN).ceil().max(0.0) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    MatchingUpper,
    #[serde(rename = "degenerate-2col")]
    Degenerate2Col,
    PartitionExperiment,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub kind: BoundKind,
    /// Matching size or number of colours used.
    pub value: usize,
    /// What the theory guarantees for `value`, when it says anything.
    pub guarantee: Option<usize>,
    pub certificate: Option<Colouring>,
    pub alpha: f64,
    pub beta: f64,
}

/// Greedy matching on `t`, its colouring, and the report tying them together.
pub fn matching_report(t: &Digraph) -> Result<BoundReport> {
    let m = greedy_acyclic_matching(t)?;
    let c = matching_to_colouring(t, &m)?;
    let guarantee = matching_guarantee(t.n());
    if m.len() < guarantee {
        return Err(Error::InvariantBreach(format!("matching of size {} below guarantee {guarantee}", m.len())));
    }
    Ok(BoundReport {
        n: t.n(),
        kind: BoundKind::MatchingUpper,
        value: m.len(),
        guarantee: Some(guarantee),
        certificate: Some(c),
        alpha: ALPHA,
        beta: BETA,
    })
}

/// The 2-colouring of a 2-degenerate oriented graph, as a report.
pub fn degenerate_report(d: &Digraph) -> Result<BoundReport> {
    let (x1, x2) = two_degenerate_partition(d)?;
    let c = partition_to_2colouring(d, &x1, &x2)?;
    debug_assert!(verify_acyclic_dicolouring(d, &c)?.is_ok());
    Ok(BoundReport {
        n: d.n(),
        kind: BoundKind::Degenerate2Col,
        value: c.used(),
        guarantee: Some(2),
        certificate: Some(c),
        alpha: ALPHA,
        beta: BETA,
    })
}
