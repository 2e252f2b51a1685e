use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use adicol::bounds::{
    candidate_monte_carlo, greedy_acyclic_matching, matching_guarantee, matching_to_colouring, partition_to_2colouring,
    partitionability_experiment, two_degenerate_partition, BoundKind, BoundReport, ALPHA, BETA,
};
use adicol::constructions::{self as cons, ConstructionOutput, GadgetKind};
use adicol::dicolour::{verify_acyclic_dicolouring, verify_acyclic_matching, verify_dicolouring, Verdict};
use adicol::format::{self, Format};
use adicol::solver::exact::MAX_VERTICES;
use adicol::solver::{
    acyclic_dichromatic_number, chromatic_number, decide, dichromatic_number, Decision, Mode, SolveOptions,
    SolveOutcome,
};
use adicol::tournament::{
    acyclic_2_dicolour_with, find_st_colouring, is_st_colouring, TwoColourOptions, TwoColourResult,
};
use adicol::{Colouring, Digraph, Error, UndirectedGraph};
use clap::ValueEnum;
use serde_json::{json, Value};
use thiserror::Error;

use crate::input::Inputs;
use crate::{
    BoundCommand, Command, ConstructArgs, Construction, ConvertArgs, ExperimentCommand, Param, SolveArgs, Target,
    Tour2colArgs, VerifyArgs, EXIT_INPUT, EXIT_INTERNAL, EXIT_LIMIT, EXIT_NO,
};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Limit(_) => EXIT_LIMIT,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded(_) | Error::TooLarge { .. } => Failure::Limit(e.to_string()),
            Error::InvariantBreach(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub summary: Value,
    /// Graphviz rendering for `--dot`.
    pub dot: Option<String>,
}

impl Outcome {
    fn new(code: u8, json_mode: bool, text: String, summary: Value) -> Self {
        let stdout = if json_mode { format!("{summary}\n") } else { text };
        Outcome { code, stdout, summary, dot: None }
    }

    fn with_dot(mut self, d: &Digraph, c: Option<&Colouring>, roles: &BTreeMap<String, usize>) -> Self {
        self.dot = Some(format::to_dot(d, c, roles));
        self
    }
}

pub fn seed_of(command: &Command) -> Option<u64> {
    match command {
        Command::Experiment(ExperimentCommand::Partitionable { seed, .. })
        | Command::Experiment(ExperimentCommand::Candidate { seed, .. }) => Some(*seed),
        _ => None,
    }
}

pub fn run(command: &Command, json_mode: bool, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match command {
        Command::Solve(a) => solve(a, json_mode, inputs),
        Command::Verify(a) => verify(a, json_mode, inputs),
        Command::Construct(a) => construct(a, json_mode, inputs),
        Command::Tour2col(a) => tour2col(a, json_mode, inputs),
        Command::Bound(b) => bound(b, json_mode, inputs),
        Command::Experiment(e) => experiment(e, json_mode),
        Command::Convert(a) => convert(a, json_mode, inputs),
    }
}

fn col_value(c: &Colouring) -> Value {
    json!({ "k": c.k(), "colours": c.colours() })
}

fn proper(g: &UndirectedGraph, c: &Colouring) -> bool {
    c.len() == g.n() && g.edges().all(|(u, v)| c.colour(u) != c.colour(v))
}

/// Re-checks a certificate before it is printed.
fn check_dicolouring(d: &Digraph, c: &Colouring, mode: Mode) -> Result<(), Failure> {
    let verdict = match mode {
        Mode::Acyclic => verify_acyclic_dicolouring(d, c)?,
        _ => verify_dicolouring(d, c)?,
    };
    if !verdict.is_ok() {
        return Err(Failure::Internal("certificate failed re-verification".into()));
    }
    Ok(())
}

fn solve(a: &SolveArgs, json_mode: bool, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let opts = SolveOptions { limit: a.limit, parallel: a.parallel.max(1), tournament_prepass: false };
    if a.param == Param::Chi {
        let g = inputs.ugraph(&a.input)?;
        return solve_chi(&g, a.k, &opts, json_mode);
    }
    let (d, roles) = inputs.digraph(Some(&a.input))?;
    let mode = if a.param == Param::Adic { Mode::Acyclic } else { Mode::Di };
    if let Some(k) = a.k {
        let outcome = match decide(&d, k, mode, &opts)? {
            Decision::Yes(c) => {
                check_dicolouring(&d, &c, mode)?;
                let text = format!("colourable {k}\n{}", format::write_col(&c));
                let summary = json!({ "result": "colourable", "k": k, "certificate": col_value(&c) });
                Outcome::new(0, json_mode, text, summary).with_dot(&d, Some(&c), &roles)
            }
            Decision::No { nodes } => {
                let summary = json!({ "result": "not-colourable", "k": k, "nodes": nodes });
                Outcome::new(EXIT_NO, json_mode, format!("not-colourable {k}\n"), summary)
            }
            Decision::ExceedsLimit { nodes } => exceeds(json_mode, json!({ "nodes": nodes, "k": k })),
        };
        return Ok(outcome);
    }
    let outcome = match mode {
        Mode::Acyclic => acyclic_dichromatic_number(&d, &opts)?,
        _ => dichromatic_number(&d, &opts)?,
    };
    match outcome {
        SolveOutcome::Solved(r) => {
            let c = r.certificate.clone().ok_or_else(|| Failure::Internal("solver returned no certificate".into()))?;
            check_dicolouring(&d, &c, mode)?;
            let text = format!("value {}\n{}", r.value, format::write_col(&c));
            let summary = json!({
                "result": "value",
                "param": if mode == Mode::Acyclic { "adic" } else { "dic" },
                "value": r.value,
                "certificate": col_value(&c),
                "lower_bound_proof": r.lower_bound_proof,
                "nodes": r.nodes,
            });
            Ok(Outcome::new(0, json_mode, text, summary).with_dot(&d, Some(&c), &roles))
        }
        SolveOutcome::ExceedsLimit { nodes, lower_bound } => {
            Ok(exceeds(json_mode, json!({ "nodes": nodes, "lower_bound": lower_bound })))
        }
    }
}

fn exceeds(json_mode: bool, detail: Value) -> Outcome {
    let summary = json!({ "result": "exceeds-limit", "detail": detail });
    Outcome::new(EXIT_LIMIT, json_mode, "exceeds-limit\n".into(), summary)
}

fn solve_chi(g: &UndirectedGraph, k: Option<usize>, opts: &SolveOptions, json_mode: bool) -> Result<Outcome, Failure> {
    let r = match chromatic_number(g, opts)? {
        SolveOutcome::Solved(r) => r,
        SolveOutcome::ExceedsLimit { nodes, lower_bound } => {
            return Ok(exceeds(json_mode, json!({ "nodes": nodes, "lower_bound": lower_bound })));
        }
    };
    let c = r.certificate.ok_or_else(|| Failure::Internal("solver returned no certificate".into()))?;
    if !proper(g, &c) {
        return Err(Failure::Internal("certificate failed re-verification".into()));
    }
    Ok(match k {
        None => {
            let text = format!("value {}\n{}", r.value, format::write_col(&c));
            let summary = json!({ "result": "value", "param": "chi", "value": r.value, "certificate": col_value(&c) });
            Outcome::new(0, json_mode, text, summary)
        }
        Some(k) if r.value <= k => {
            let c = Colouring::new(c.colours().to_vec(), k as u32)?;
            let text = format!("colourable {k}\n{}", format::write_col(&c));
            let summary = json!({ "result": "colourable", "k": k, "certificate": col_value(&c) });
            Outcome::new(0, json_mode, text, summary)
        }
        Some(k) => {
            let summary = json!({ "result": "not-colourable", "k": k });
            Outcome::new(EXIT_NO, json_mode, format!("not-colourable {k}\n"), summary)
        }
    })
}

fn verify(a: &VerifyArgs, json_mode: bool, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let (d, roles) = inputs.digraph(Some(&a.digraph))?;
    let c = inputs.colouring(&a.colouring)?;
    let verdict = if a.plain { verify_dicolouring(&d, &c)? } else { verify_acyclic_dicolouring(&d, &c)? };
    let outcome = match verdict {
        Verdict::Ok => Outcome::new(0, json_mode, "ok\n".into(), json!({ "result": "ok" })),
        Verdict::Violation(cycle) => {
            if !cycle.is_genuine(&d, &c) {
                return Err(Failure::Internal("violating cycle failed re-verification".into()));
            }
            let summary = json!({ "result": "violation", "cycle": cycle });
            Outcome::new(EXIT_NO, json_mode, format!("{cycle}\n"), summary)
        }
    };
    Ok(outcome.with_dot(&d, Some(&c), &roles))
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn need(value: Option<usize>, flag: &str, name: Construction) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Input(format!("{} needs --{flag}", value_name(name))))
}

fn need_inputs<'a>(paths: &'a [PathBuf], count: usize, what: &str) -> Result<&'a [PathBuf], Failure> {
    if paths.len() != count {
        return Err(Failure::Input(format!("{what} takes {count} --input files, got {}", paths.len())));
    }
    Ok(paths)
}

fn plain(d: Digraph) -> ConstructionOutput {
    ConstructionOutput { digraph: d, roles: BTreeMap::new() }
}

fn build(a: &ConstructArgs, inputs: &mut Inputs) -> Result<ConstructionOutput, Failure> {
    use Construction::*;
    let mut read = |p: &Path| inputs.digraph(Some(p)).map(|(d, _)| d);
    Ok(match a.name {
        Tt => plain(cons::transitive_tournament(need(a.k, "k", a.name)?)),
        Hero => plain(cons::hero_hk(need(a.k, "k", a.name)?)?),
        Rn => plain(cons::rotational_rn(need(a.n, "n", a.name)?)?),
        DoubleTt => cons::matched_double_tt(need(a.k, "k", a.name)?)?,
        Gap => cons::gap_tournament(need(a.k, "k", a.name)?)?,
        VertexSplit => match (a.input.as_slice(), a.k) {
            ([path], None) => cons::vertex_split(&inputs.ugraph(path)?),
            ([], Some(k)) => cons::vertex_split(&UndirectedGraph::complete(k)),
            _ => return Err(Failure::Input("vertex-split takes either one --input UG file or --k".into())),
        },
        SplitReduction => cons::split_reduction(&read(&need_inputs(&a.input, 1, "split-reduction")?[0])?)?,
        SplitLift => {
            let p = need_inputs(&a.input, 2, "split-lift")?;
            let dk = read(&p[0])?;
            cons::split_lift(&dk, &read(&p[1])?)?
        }
        GadgetW => cons::planar_gadget(GadgetKind::W),
        GadgetTriangle => cons::planar_gadget(GadgetKind::GluedTriangle),
        Ramsey3 => cons::ramsey_3deg(need(a.s, "s", a.name)?)?,
        Arrow => {
            let p = need_inputs(&a.input, 2, "arrow")?;
            let h1 = read(&p[0])?;
            plain(cons::arrow(&h1, &read(&p[1])?))
        }
        Delta => {
            let p = need_inputs(&a.input, 3, "delta")?;
            let h1 = read(&p[0])?;
            let h2 = read(&p[1])?;
            plain(cons::delta(&h1, &h2, &read(&p[2])?))
        }
        Substitute => {
            let Some((s, parts)) = a.input.split_first() else {
                return Err(Failure::Input("substitute takes --input S Q_1 ... Q_s".into()));
            };
            let s = read(s)?;
            let parts = parts.iter().map(|p| read(p)).collect::<Result<Vec<_>, _>>()?;
            plain(cons::substitute(&s, &parts)?)
        }
        Independent => plain(cons::independent(need(a.n, "n", a.name)?)),
    })
}

fn construct(a: &ConstructArgs, json_mode: bool, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let out = build(a, inputs)?;
    let odg = format::write_odg_with_roles(&out.digraph, &out.roles);
    let name = value_name(a.name);
    let mut summary = json!({
        "construction": name,
        "n": out.digraph.n(),
        "arcs": out.digraph.arc_count(),
        "roles": out.roles.len(),
    });
    let text = match &a.output {
        Some(path) => {
            std::fs::write(path, &odg).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            summary["output"] = json!(path.display().to_string());
            String::new()
        }
        None => {
            if json_mode {
                summary["odg"] = json!(odg);
            }
            odg
        }
    };
    Ok(Outcome::new(0, json_mode, text, summary).with_dot(&out.digraph, None, &out.roles))
}

/// A directed triangle inside `N+(v) & N-(u)`, which exists when the arc `uv`
/// breaks lightness.
fn light_triangle(t: &Digraph, u: usize, v: usize) -> Option<[usize; 3]> {
    let inside = (t.out_neighbours(v) & t.in_neighbours(u)).to_vec();
    for &a in &inside {
        for &b in &inside {
            for &c in &inside {
                if t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn tour2col(a: &Tour2colArgs, json_mode: bool, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let (t, roles) = inputs.digraph(a.input.as_deref())?;
    t.ensure_tournament()?;
    if let Some(pair) = &a.pair {
        let (s, target) = (pair[0], pair[1]);
        t.check_vertex(s)?;
        t.check_vertex(target)?;
        return match find_st_colouring(&t, s, target) {
            Ok(Some(c)) => {
                if !is_st_colouring(&t, s, target, &c)? {
                    return Err(Failure::Internal("(s, t)-colouring failed re-verification".into()));
                }
                let summary = json!({ "result": "colourable", "pair": [s, target], "certificate": col_value(&c) });
                Ok(Outcome::new(0, json_mode, format::write_col(&c), summary).with_dot(&t, Some(&c), &roles))
            }
            Ok(None) => {
                let summary = json!({ "result": "no-st-colouring", "pair": [s, target] });
                Ok(Outcome::new(EXIT_NO, json_mode, format!("no-st-colouring {s} {target}\n"), summary))
            }
            Err(Error::NotLight(u, v)) => Ok(not_light(&t, u, v, a.certify, json_mode)),
            Err(e) => Err(e.into()),
        };
    }

    let (result, counters) = acyclic_2_dicolour_with(&t, &TwoColourOptions { workers: a.parallel.max(1) })?;
    let certified = if a.certify {
        if t.n() > MAX_VERTICES {
            return Err(Failure::Limit(format!("--certify supports at most {MAX_VERTICES} vertices")));
        }
        let exact = adicol::solver::is_acyclic_k_dicolourable(&t, 2)?;
        if exact.is_some() != result.is_colourable() {
            return Err(Failure::Internal("exhaustive search disagrees with the tournament algorithm".into()));
        }
        true
    } else {
        false
    };
    let counters = json!({ "pairs": counters.pairs, "candidates": counters.candidates, "coherent": counters.coherent });
    let mut outcome = match result {
        TwoColourResult::Colourable(c) => {
            check_dicolouring(&t, &c, Mode::Acyclic)?;
            let mut text = String::new();
            if certified {
                text.push_str("# certified by exhaustive search\n");
            }
            text.push_str(&format::write_col(&c));
            let summary = json!({ "result": "colourable", "certificate": col_value(&c), "counters": counters });
            Outcome::new(0, json_mode, text, summary).with_dot(&t, Some(&c), &roles)
        }
        TwoColourResult::NotLight(u, v) => not_light(&t, u, v, certified, json_mode),
        TwoColourResult::NoNicePair => {
            let mut text = "no-nice-pair\n".to_string();
            if certified {
                text.push_str("# certified by exhaustive search\n");
            }
            let summary = json!({ "result": "no-nice-pair", "counters": counters });
            Outcome::new(EXIT_NO, json_mode, text, summary)
        }
    };
    outcome.summary["certified"] = json!(certified);
    Ok(outcome)
}

fn not_light(t: &Digraph, u: usize, v: usize, witness: bool, json_mode: bool) -> Outcome {
    let mut text = format!("not-light arc {u} {v}\n");
    let mut summary = json!({ "result": "not-light", "arc": [u, v] });
    if witness {
        if let Some([a, b, c]) = light_triangle(t, u, v) {
            let _ = writeln!(text, "# triangle {a} {b} {c}");
            summary["triangle"] = json!([a, b, c]);
        }
    }
    Outcome::new(EXIT_NO, json_mode, text, summary)
}

fn report_json(r: &BoundReport) -> Value {
    json!({
        "n": r.n,
        "kind": r.kind,
        "value": r.value,
        "guarantee": r.guarantee,
        "certificate": r.certificate.as_ref().map(col_value),
        "alpha": r.alpha,
        "beta": r.beta,
    })
}

fn bound(b: &BoundCommand, json_mode: bool, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match b {
        BoundCommand::Matching { input } => {
            let (t, roles) = inputs.digraph(Some(input))?;
            let m = greedy_acyclic_matching(&t)?;
            if !verify_acyclic_matching(&t, &m)? {
                return Err(Failure::Internal("matching failed re-verification".into()));
            }
            let c = matching_to_colouring(&t, &m)?;
            check_dicolouring(&t, &c, Mode::Acyclic)?;
            let guarantee = matching_guarantee(t.n());
            let mut text = format!("value {}\nguarantee {guarantee}\ncolours {}\n", m.len(), c.k());
            for &(u, v) in &m.arcs {
                let _ = writeln!(text, "# matched {u} {v}");
            }
            text.push_str(&format::write_col(&c));
            let report = BoundReport {
                n: t.n(),
                kind: BoundKind::MatchingUpper,
                value: m.len(),
                guarantee: Some(guarantee),
                certificate: Some(c.clone()),
                alpha: ALPHA,
                beta: BETA,
            };
            let mut summary = report_json(&report);
            summary["matching"] = json!(m.arcs);
            Ok(Outcome::new(0, json_mode, text, summary).with_dot(&t, Some(&c), &roles))
        }
        BoundCommand::Degenerate2 { input } => {
            let (d, roles) = inputs.digraph(Some(input))?;
            let (x1, x2) = two_degenerate_partition(&d)?;
            let c = partition_to_2colouring(&d, &x1, &x2)?;
            check_dicolouring(&d, &c, Mode::Acyclic)?;
            let text = format!("value {}\n{}", c.used(), format::write_col(&c));
            let report = BoundReport {
                n: d.n(),
                kind: BoundKind::Degenerate2Col,
                value: c.used(),
                guarantee: Some(2),
                certificate: Some(c.clone()),
                alpha: ALPHA,
                beta: BETA,
            };
            Ok(Outcome::new(0, json_mode, text, report_json(&report)).with_dot(&d, Some(&c), &roles))
        }
    }
}

fn experiment(e: &ExperimentCommand, json_mode: bool) -> Result<Outcome, Failure> {
    match *e {
        ExperimentCommand::Partitionable { n, ell, trials, seed, parallel } => {
            let r = partitionability_experiment(n, ell, trials, seed, parallel)?;
            let text = format!("value {}\nfrequency {}\nci95 {} {}\n", r.value, r.frequency, r.ci95[0], r.ci95[1]);
            let summary = serde_json::to_value(&r).map_err(|e| Failure::Internal(e.to_string()))?;
            Ok(Outcome::new(0, json_mode, text, summary))
        }
        ExperimentCommand::Candidate { k2, k3, trials, seed } => {
            let mc = candidate_monte_carlo(k2, k3, trials, seed)?;
            let text = format!(
                "value {}\nfrequency {}\nexpected {}\ndeviation {}\n",
                mc.hits,
                mc.frequency,
                mc.expected,
                mc.deviation()
            );
            let mut summary = serde_json::to_value(&mc).map_err(|e| Failure::Internal(e.to_string()))?;
            summary["seed"] = json!(seed);
            Ok(Outcome::new(0, json_mode, text, summary))
        }
    }
}

fn ug_dot(g: &UndirectedGraph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

fn with_roles(mut text: String, roles: &BTreeMap<String, usize>) -> String {
    let mut by_vertex: Vec<(usize, &str)> = roles.iter().map(|(l, &v)| (v, l.as_str())).collect();
    by_vertex.sort_unstable();
    for (v, label) in by_vertex {
        let _ = writeln!(text, "# role {label} {v}");
    }
    text
}

fn convert(a: &ConvertArgs, json_mode: bool, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let (name, text) = inputs.read(Some(&a.input))?;
    let from = Inputs::format_of(&text, &name)?;
    let parse = |e: Error| Failure::Input(format!("{name}: {e}"));
    let colouring = match &a.colouring {
        Some(p) if a.to == Target::Dot => Some(inputs.colouring(p)?),
        Some(_) => return Err(Failure::Input("--colouring only applies to --to dot".into())),
        None => None,
    };
    let converted = match (from, a.to) {
        (Format::Col, _) => return Err(Failure::Input(format!("{name}: a colouring cannot be converted"))),
        (Format::Ug, Target::Ug) => format::write_ug(&format::parse_ug(&text).map_err(parse)?),
        (Format::Ug, Target::Dot) => {
            if colouring.is_some() {
                return Err(Failure::Input("colourings render on digraphs only".into()));
            }
            ug_dot(&format::parse_ug(&text).map_err(parse)?)
        }
        (Format::Ug, _) => {
            return Err(Failure::Input(format!(
                "{name}: an undirected graph has no orientation; orient it or use vertex-split"
            )))
        }
        (_, Target::Ug) => {
            return Err(Failure::Input(format!("{name}: converting a digraph to UG loses arc directions")));
        }
        (_, target) => {
            let (d, roles) = format::parse_digraph(&text).map_err(parse)?;
            match target {
                Target::Odg => format::write_odg_with_roles(&d, &roles),
                Target::Mat => with_roles(format::write_mat(&d), &roles),
                _ => {
                    if let Some(c) = &colouring {
                        if c.len() != d.n() {
                            return Err(Error::DomainMismatch { expected: d.n(), got: c.len() }.into());
                        }
                    }
                    format::to_dot(&d, colouring.as_ref(), &roles)
                }
            }
        }
    };
    let to = value_name(a.to);
    let mut summary = json!({ "from": from.keyword(), "to": to });
    let text = match &a.output {
        Some(path) => {
            std::fs::write(path, &converted)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            summary["output"] = json!(path.display().to_string());
            String::new()
        }
        None => {
            if json_mode {
                summary["text"] = json!(converted);
            }
            converted
        }
    };
    Ok(Outcome::new(0, json_mode, text, summary))
}
