//! Text formats for spaces, complexes and reduction traces, and DOT export.
//!
//! Spaces: one directive per line, `point <label>` or `<greater> > <lesser>`.
//! Complexes: one facet per line, vertices separated by whitespace.
//! Traces: a space followed by `move <size> <kind> <labels...>` lines.
//! In all three `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::poset::{validate_label, FiniteSpace};
use crate::reduction::{MoveKind, ReductionMove, ReductionTrace};

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn label(line: usize, token: &str) -> Result<String> {
    let token = token.trim();
    validate_label(token).map_err(|_| parse_error(line, format!("invalid label `{token}`")))?;
    Ok(token.to_string())
}

#[derive(Default)]
struct SpaceLines {
    points: Vec<String>,
    covers: Vec<(String, String)>,
}

impl SpaceLines {
    /// Returns false if the line is not a space directive.
    fn accept(&mut self, n: usize, line: &str) -> Result<bool> {
        if let Some((g, l)) = line.split_once('>') {
            let (g, l) = (label(n, g)?, label(n, l)?);
            self.points.push(g.clone());
            self.points.push(l.clone());
            self.covers.push((g, l));
            return Ok(true);
        }
        let mut tokens = line.split_whitespace();
        if tokens.next() == Some("point") {
            let rest: Vec<&str> = tokens.collect();
            if rest.len() != 1 {
                return Err(parse_error(n, "expected `point <label>`"));
            }
            self.points.push(label(n, rest[0])?);
            return Ok(true);
        }
        Ok(false)
    }

    fn build(mut self) -> Result<FiniteSpace> {
        self.points.sort();
        self.points.dedup();
        FiniteSpace::build(self.points, self.covers)
    }
}

pub fn parse_space(text: &str) -> Result<FiniteSpace> {
    let mut lines = SpaceLines::default();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if !line.is_empty() && !lines.accept(i + 1, line)? {
            return Err(parse_error(
                i + 1,
                format!("unrecognized directive `{line}`"),
            ));
        }
    }
    lines.build()
}

pub fn serialize_space(x: &FiniteSpace) -> String {
    let mut out = String::new();
    for l in x.labels() {
        let _ = writeln!(out, "point {l}");
    }
    for (g, l) in x.covers() {
        let _ = writeln!(out, "{g} > {l}");
    }
    out
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let facet = line
            .split_whitespace()
            .map(|t| label(i + 1, t))
            .collect::<Result<Vec<_>>>()?;
        facets.push(facet);
    }
    SimplicialComplex::from_facets(facets)
}

pub fn serialize_complex(k: &SimplicialComplex) -> String {
    k.facet_labels()
        .iter()
        .map(|f| f.join(" ") + "\n")
        .collect()
}

/// Hasse diagram as a DOT digraph, edges pointing down, points of equal rank
/// on one row.
pub fn export_dot(x: &FiniteSpace) -> String {
    let mut out = String::from("digraph X {\n  rankdir=TB;\n");
    let mut rows: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (i, r) in x.ranks_in(&x.full_mask()).into_iter().enumerate() {
        rows.entry(r.unwrap_or(0)).or_default().push(x.label(i));
    }
    for row in rows.values().rev() {
        let nodes: Vec<String> = row.iter().map(|l| format!("\"{l}\";")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", nodes.join(" "));
    }
    for (g, l) in x.covers() {
        let _ = writeln!(out, "  \"{g}\" -> \"{l}\";");
    }
    out.push_str("}\n");
    out
}

pub fn serialize_trace(t: &ReductionTrace) -> String {
    let mut out = serialize_space(&t.initial);
    for m in &t.moves {
        let _ = writeln!(out, "move {m}");
    }
    out
}

fn parse_move(n: usize, line: &str) -> Result<ReductionMove> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let size_before = tokens
        .get(1)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_error(n, "expected `move <size> <kind> ...`"))?;
    let args = &tokens[2.min(tokens.len())..];
    let one = |args: &[&str]| -> Result<String> {
        match args {
            [_, x] => label(n, x),
            _ => Err(parse_error(n, "expected one label")),
        }
    };
    let kind = match args.first().copied() {
        Some("beat-down") => MoveKind::BeatDown(one(args)?),
        Some("beat-up") => MoveKind::BeatUp(one(args)?),
        Some("weak") => MoveKind::Weak(one(args)?),
        Some("a-reduction") => MoveKind::AReduction(one(args)?),
        Some("qc") => match args {
            [_, a, b, c] => MoveKind::Qc {
                a: label(n, a)?,
                b: label(n, b)?,
                relative: label(n, c)?,
            },
            _ => return Err(parse_error(n, "expected `qc <a> <b> <relative>`")),
        },
        other => {
            return Err(parse_error(
                n,
                format!("unknown move `{}`", other.unwrap_or("")),
            ))
        }
    };
    Ok(ReductionMove { kind, size_before })
}

pub fn parse_trace(text: &str) -> Result<ReductionTrace> {
    let mut lines = SpaceLines::default();
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if line.split_whitespace().next() == Some("move") {
            moves.push(parse_move(i + 1, line)?);
        } else if !moves.is_empty() {
            return Err(parse_error(
                i + 1,
                "space directives must precede the moves",
            ));
        } else if !lines.accept(i + 1, line)? {
            return Err(parse_error(
                i + 1,
                format!("unrecognized directive `{line}`"),
            ));
        }
    }
    Ok(ReductionTrace {
        initial: lines.build()?,
        moves,
    })
}
