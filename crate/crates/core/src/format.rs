//! Plain-text formats.
//!
//! - ODG v1: `odg <n> <m>` then `m` lines `<u> <v>`, one arc each.
//! - UG v1: `ug <n> <m>` then `m` lines `<u> <v>`, one edge each.
//! - COL v1: `col <n> <k>` then `n` lines `<vertex> <colour>`.
//! - mat: `mat <n>` then `n` rows of `n` space-separated 0/1 entries.
//!
//! Vertices are 0-indexed. Lines starting with `#` and blank lines are
//! ignored, except that `# role <label> <vertex>` lines attach names to
//! vertices. Writers emit arcs and edges in lexicographic order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::dicolour::Colouring;
use crate::digraph::{Digraph, DigraphBuilder};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Odg,
    Ug,
    Col,
    Mat,
}

impl Format {
    pub fn keyword(self) -> &'static str {
        match self {
            Format::Odg => "odg",
            Format::Ug => "ug",
            Format::Col => "col",
            Format::Mat => "mat",
        }
    }

    fn from_keyword(word: &str) -> Option<Format> {
        match word {
            "odg" => Some(Format::Odg),
            "ug" => Some(Format::Ug),
            "col" => Some(Format::Col),
            "mat" => Some(Format::Mat),
            _ => None,
        }
    }
}

/// Content lines with their 1-based line numbers, plus role annotations.
struct Lines<'a> {
    content: Vec<(usize, Vec<&'a str>)>,
    roles: Vec<(usize, &'a str, &'a str)>,
}

fn split_lines(text: &str) -> Lines<'_> {
    let mut content = Vec::new();
    let mut roles = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let words: Vec<&str> = comment.split_whitespace().collect();
            if let ["role", label, vertex] = words.as_slice() {
                roles.push((i + 1, *label, *vertex));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        content.push((i + 1, line.split_whitespace().collect()));
    }
    Lines { content, roles }
}

fn number(line: usize, word: &str, what: &str) -> Result<usize> {
    word.parse().map_err(|_| Error::parse(line, format!("{what}: expected a non-negative integer, found {word:?}")))
}

/// Reads the header, checking its keyword and arity.
fn header<'a>(lines: &'a Lines<'_>, expected: Format, fields: usize) -> Result<(usize, &'a [&'a str])> {
    let Some((line, words)) = lines.content.first() else {
        return Err(Error::parse(1, format!("missing `{}` header", expected.keyword())));
    };
    let found = words[0];
    if found != expected.keyword() {
        let hint = match (Format::from_keyword(found), expected) {
            (Some(Format::Ug), Format::Odg | Format::Mat) => {
                "; this is an undirected graph, which this command does not accept"
            }
            (Some(Format::Odg | Format::Mat), Format::Ug) => "; this is a digraph, expected an undirected graph",
            _ => "",
        };
        return Err(Error::parse(*line, format!("expected `{}` header, found {found:?}{hint}", expected.keyword())));
    }
    if words.len() != fields + 1 {
        return Err(Error::parse(*line, format!("`{}` header takes {fields} numbers", expected.keyword())));
    }
    Ok((*line, &words[1..]))
}

/// The format named by the first content line.
pub fn detect(text: &str) -> Result<Format> {
    let lines = split_lines(text);
    let (line, words) = lines.content.first().ok_or_else(|| Error::parse(1, "empty input"))?;
    Format::from_keyword(words[0]).ok_or_else(|| Error::parse(*line, format!("unknown format header {:?}", words[0])))
}

fn pair_lines(lines: &Lines<'_>, n: usize, m: usize, header_line: usize) -> Result<Vec<(usize, usize, usize)>> {
    let body = &lines.content[1..];
    if body.len() != m {
        let line = body.get(m).map_or(header_line, |(l, _)| *l);
        return Err(Error::parse(line, format!("header announces {m} lines, found {}", body.len())));
    }
    body.iter()
        .map(|(line, words)| {
            if words.len() != 2 {
                return Err(Error::parse(*line, "expected two vertices"));
            }
            let u = number(*line, words[0], "vertex")?;
            let v = number(*line, words[1], "vertex")?;
            for x in [u, v] {
                if x >= n {
                    return Err(Error::parse(*line, format!("vertex {x} out of range for n = {n}")));
                }
            }
            if u == v {
                return Err(Error::parse(*line, format!("loop at vertex {u}")));
            }
            Ok((*line, u, v))
        })
        .collect()
}

fn parse_roles(lines: &Lines<'_>, n: usize) -> Result<BTreeMap<String, usize>> {
    let mut roles = BTreeMap::new();
    for &(line, label, vertex) in &lines.roles {
        let v = number(line, vertex, "role vertex")?;
        if v >= n {
            return Err(Error::parse(line, format!("role vertex {v} out of range for n = {n}")));
        }
        if roles.insert(label.to_string(), v).is_some() {
            return Err(Error::parse(line, format!("duplicate role {label:?}")));
        }
    }
    Ok(roles)
}

pub fn parse_odg(text: &str) -> Result<Digraph> {
    parse_odg_with_roles(text).map(|(d, _)| d)
}

pub fn parse_odg_with_roles(text: &str) -> Result<(Digraph, BTreeMap<String, usize>)> {
    let lines = split_lines(text);
    let (hline, fields) = header(&lines, Format::Odg, 2)?;
    let n = number(hline, fields[0], "n")?;
    let m = number(hline, fields[1], "m")?;
    let mut b = DigraphBuilder::new(n);
    for (line, u, v) in pair_lines(&lines, n, m, hline)? {
        b.arc(u, v).map_err(|e| Error::parse(line, e.to_string()))?;
    }
    let roles = parse_roles(&lines, n)?;
    Ok((b.build(), roles))
}

pub fn write_odg(d: &Digraph) -> String {
    write_odg_with_roles(d, &BTreeMap::new())
}

/// ODG v1 followed by one `# role` line per role, in vertex order.
pub fn write_odg_with_roles(d: &Digraph, roles: &BTreeMap<String, usize>) -> String {
    let mut out = format!("odg {} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    let mut by_vertex: Vec<(usize, &str)> = roles.iter().map(|(l, &v)| (v, l.as_str())).collect();
    by_vertex.sort_unstable();
    for (v, label) in by_vertex {
        let _ = writeln!(out, "# role {label} {v}");
    }
    out
}

pub fn parse_ug(text: &str) -> Result<UndirectedGraph> {
    let lines = split_lines(text);
    let (hline, fields) = header(&lines, Format::Ug, 2)?;
    let n = number(hline, fields[0], "n")?;
    let m = number(hline, fields[1], "m")?;
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, u, v) in pair_lines(&lines, n, m, hline)? {
        let e = (u.min(v), u.max(v));
        if !seen.insert(e) {
            return Err(Error::parse(line, format!("duplicate edge {} -- {}", e.0, e.1)));
        }
        edges.push(e);
    }
    UndirectedGraph::from_edges(n, edges)
}

pub fn write_ug(g: &UndirectedGraph) -> String {
    let mut out = format!("ug {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_col(text: &str) -> Result<Colouring> {
    let lines = split_lines(text);
    let (hline, fields) = header(&lines, Format::Col, 2)?;
    let n = number(hline, fields[0], "n")?;
    let k = number(hline, fields[1], "k")?;
    let k = u32::try_from(k).map_err(|_| Error::parse(hline, "k too large"))?;
    let body = &lines.content[1..];
    if body.len() != n {
        return Err(Error::parse(hline, format!("header announces {n} vertices, found {} lines", body.len())));
    }
    let mut colours = vec![0u32; n];
    for (line, words) in body {
        if words.len() != 2 {
            return Err(Error::parse(*line, "expected `<vertex> <colour>`"));
        }
        let v = number(*line, words[0], "vertex")?;
        let c = number(*line, words[1], "colour")?;
        if v >= n {
            return Err(Error::parse(*line, format!("vertex {v} out of range for n = {n}")));
        }
        if c == 0 || c > k as usize {
            return Err(Error::parse(*line, format!("colour {c} outside 1..={k}")));
        }
        if colours[v] != 0 {
            return Err(Error::parse(*line, format!("vertex {v} coloured twice")));
        }
        colours[v] = c as u32;
    }
    Colouring::new(colours, k)
}

pub fn write_col(c: &Colouring) -> String {
    let mut out = format!("col {} {}\n", c.len(), c.k());
    for (v, colour) in c.colours().iter().enumerate() {
        let _ = writeln!(out, "{v} {colour}");
    }
    out
}

pub fn parse_mat(text: &str) -> Result<Digraph> {
    let lines = split_lines(text);
    let (hline, fields) = header(&lines, Format::Mat, 1)?;
    let n = number(hline, fields[0], "n")?;
    let body = &lines.content[1..];
    if body.len() != n {
        return Err(Error::parse(hline, format!("header announces {n} rows, found {}", body.len())));
    }
    let mut b = DigraphBuilder::new(n);
    for (u, (line, words)) in body.iter().enumerate() {
        if words.len() != n {
            return Err(Error::parse(*line, format!("row has {} entries, expected {n}", words.len())));
        }
        for (v, w) in words.iter().enumerate() {
            match *w {
                "0" => {}
                "1" if u == v => return Err(Error::parse(*line, format!("loop at vertex {u}"))),
                "1" => {
                    b.arc(u, v).map_err(|e| Error::parse(*line, e.to_string()))?;
                }
                other => return Err(Error::parse(*line, format!("matrix entry must be 0 or 1, found {other:?}"))),
            }
        }
    }
    Ok(b.build())
}

pub fn write_mat(d: &Digraph) -> String {
    let n = d.n();
    let mut out = format!("mat {n}\n");
    for u in 0..n {
        let row: Vec<&str> = (0..n).map(|v| if d.has_arc(u, v) { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a digraph from ODG or mat text.
pub fn parse_digraph(text: &str) -> Result<(Digraph, BTreeMap<String, usize>)> {
    match detect(text)? {
        Format::Mat => {
            let d = parse_mat(text)?;
            let roles = parse_roles(&split_lines(text), d.n())?;
            Ok((d, roles))
        }
        _ => parse_odg_with_roles(text),
    }
}

const PALETTE: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd",
    "#ccebc5", "#ffed6f",
];

/// Graphviz rendering; colour classes become fill colours and roles labels.
pub fn to_dot(d: &Digraph, colouring: Option<&Colouring>, roles: &BTreeMap<String, usize>) -> String {
    let mut labels: Vec<Vec<&str>> = vec![Vec::new(); d.n()];
    for (label, &v) in roles {
        if v < d.n() {
            labels[v].push(label);
        }
    }
    let mut out = String::from("digraph G {\n  node [shape=circle];\n");
    for (v, names) in labels.iter().enumerate() {
        let mut attrs = Vec::new();
        let label = if names.is_empty() { v.to_string() } else { format!("{v}\\n{}", names.join(",")) };
        attrs.push(format!("label=\"{label}\""));
        if let Some(c) = colouring.filter(|c| c.len() == d.n()) {
            let colour = c.colour(v);
            attrs.push("style=filled".into());
            attrs.push(format!("fillcolor=\"{}\"", PALETTE[(colour as usize - 1) % PALETTE.len()]));
            attrs.push(format!("tooltip=\"colour {colour}\""));
        }
        let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
    }
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}
