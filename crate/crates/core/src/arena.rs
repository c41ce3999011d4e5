//! Finite edge-colored arenas, paths, and the ant walk along a path.
//!
//! Nodes, edges and colors are addressed by dense indices. Edge indices are
//! the stable identity of an edge: parallel edges with the same color are
//! different edges, which general memory structures may tell apart.
//!
//! # Text format
//!
//! ```text
//! arena v1
//! # comments start with '#'
//! node circle A
//! node square P
//! color u builtin=u
//! color p0 incr prefix=0110 tail=0
//! color g T=1 d=0 beta=id table=[(0,0)->(0,0),(0,1)->(0,1)]
//! edge circle u square
//! ```
//!
//! Edges are numbered in the order of their `edge` lines, starting at 0.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::omega::{BitMap, ColorMap, NamedMap, OmegaPoint};

pub type NodeId = usize;
pub type EdgeId = usize;
pub type ColorId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Owner {
    Protagonist,
    Antagonist,
}

impl Owner {
    fn token(self) -> &'static str {
        match self {
            Owner::Protagonist => "P",
            Owner::Antagonist => "A",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub owner: Owner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: NodeId,
    pub color: ColorId,
    pub target: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Color {
    pub name: String,
    pub map: ColorMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArenaError {
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("node `{0}` is declared for both players")]
    PartitionViolation(String),
    #[error("duplicate color `{0}`")]
    DuplicateColor(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("node index {0} out of range")]
    NodeOutOfRange(NodeId),
    #[error("color index {0} out of range")]
    ColorOutOfRange(ColorId),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("edge {edge} does not continue the path at node `{at}`")]
    NotAdjacent { edge: EdgeId, at: String },
}

/// A problem found by [`Arena::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    SinkNode(String),
    NonMonotoneColor(String),
    DanglingEdge(EdgeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "arena has no nodes"),
            Violation::SinkNode(n) => write!(f, "node `{n}` has no outgoing edge"),
            Violation::NonMonotoneColor(c) => write!(f, "color `{c}` is not monotone"),
            Violation::DanglingEdge(e) => write!(f, "edge {e} refers to a missing node or color"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    nodes: Vec<Node>,
    colors: Vec<Color>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
}

impl Arena {
    pub fn builder() -> ArenaBuilder {
        ArenaBuilder::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v]
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn color(&self, c: ColorId) -> &Color {
        &self.colors[c]
    }

    /// The color map carried by edge `e`.
    pub fn edge_map(&self, e: EdgeId) -> &ColorMap {
        &self.colors[self.edges[e].color].map
    }

    pub fn color_name_of(&self, e: EdgeId) -> &str {
        &self.colors[self.edges[e].color].name
    }

    pub fn is_protagonist(&self, v: NodeId) -> bool {
        self.nodes[v].owner == Owner::Protagonist
    }

    /// Outgoing edges of `v` in increasing index order.
    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out[v]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn color_id(&self, name: &str) -> Option<ColorId> {
        self.colors.iter().position(|c| c.name == name)
    }

    pub fn protagonist_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&v| self.is_protagonist(v))
    }

    /// Human-readable edge label `src -color-> dst`.
    pub fn describe_edge(&self, e: EdgeId) -> String {
        let edge = self.edges[e];
        format!(
            "{} -{}-> {}",
            self.nodes[edge.source].name, self.colors[edge.color].name, self.nodes[edge.target].name
        )
    }

    /// Lists every violated arena invariant; empty iff the arena is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if self.nodes.is_empty() {
            violations.push(Violation::Empty);
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.source >= self.nodes.len() || edge.target >= self.nodes.len() || edge.color >= self.colors.len() {
                violations.push(Violation::DanglingEdge(e));
            }
        }
        for (v, node) in self.nodes.iter().enumerate() {
            if self.out[v].is_empty() {
                violations.push(Violation::SinkNode(node.name.clone()));
            }
        }
        for color in &self.colors {
            if !color.map.check_monotone() {
                violations.push(Violation::NonMonotoneColor(color.name.clone()));
            }
        }
        violations
    }

    pub fn path(&self, start: NodeId, edges: Vec<EdgeId>) -> Result<Path, ArenaError> {
        if start >= self.nodes.len() {
            return Err(ArenaError::NodeOutOfRange(start));
        }
        let mut at = start;
        for &e in &edges {
            let edge = *self.edges.get(e).ok_or(ArenaError::EdgeOutOfRange(e))?;
            if edge.source != at {
                return Err(ArenaError::NotAdjacent { edge: e, at: self.nodes[at].name.clone() });
            }
            at = edge.target;
        }
        Ok(Path { start, edges })
    }

    /// Position of the ant after walking `path` from `(0,0)`.
    pub fn ant_of(&self, path: &Path) -> Result<OmegaPoint, ArenaError> {
        let checked = self.path(path.start, path.edges.clone())?;
        Ok(self.ant_along(OmegaPoint::ZERO, &checked.edges))
    }

    pub fn layer_of(&self, path: &Path) -> Result<u64, ArenaError> {
        self.ant_of(path).map(|p| p.layer)
    }

    /// Folds the colors of `edges` over `from`; adjacency is not checked.
    pub fn ant_along(&self, from: OmegaPoint, edges: &[EdgeId]) -> OmegaPoint {
        edges.iter().fold(from, |p, &e| self.edge_map(e).apply(p))
    }

    /// Serializes to the `arena v1` text format. Colors are written in the
    /// explicit table form.
    pub fn serialize(&self) -> String {
        let mut out = String::from("arena v1\n");
        for node in &self.nodes {
            let _ = writeln!(out, "node {} {}", node.name, node.owner.token());
        }
        for color in &self.colors {
            let map = &color.map;
            let table: Vec<String> = map
                .table()
                .iter()
                .enumerate()
                .map(|(i, img)| format!("({},{})->{}", i / 2, i % 2, img))
                .collect();
            let _ = writeln!(
                out,
                "color {} T={} d={} beta={} table=[{}]",
                color.name,
                map.threshold(),
                map.shift(),
                map.tail().token(),
                table.join(",")
            );
        }
        for edge in &self.edges {
            let _ = writeln!(
                out,
                "edge {} {} {}",
                self.nodes[edge.source].name, self.colors[edge.color].name, self.nodes[edge.target].name
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Arena, ParseError> {
        parse_arena(text)
    }
}

/// A finite path: a start node and a (possibly empty) sequence of adjacent
/// edges. The empty sequence is the zero-length path at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: NodeId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn empty(start: NodeId) -> Self {
        Path { start, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn target(&self, arena: &Arena) -> NodeId {
        self.edges.last().map_or(self.start, |&e| arena.edge(e).target)
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }
}

#[derive(Debug, Default, Clone)]
pub struct ArenaBuilder {
    nodes: Vec<Node>,
    colors: Vec<Color>,
    edges: Vec<Edge>,
}

impl ArenaBuilder {
    pub fn node(&mut self, name: impl Into<String>, owner: Owner) -> Result<NodeId, ArenaError> {
        let name = name.into();
        if let Some(existing) = self.nodes.iter().find(|n| n.name == name) {
            return Err(if existing.owner != owner {
                ArenaError::PartitionViolation(name)
            } else {
                ArenaError::DuplicateNode(name)
            });
        }
        self.nodes.push(Node { name, owner });
        Ok(self.nodes.len() - 1)
    }

    pub fn color(&mut self, name: impl Into<String>, map: ColorMap) -> Result<ColorId, ArenaError> {
        let name = name.into();
        if self.colors.iter().any(|c| c.name == name) {
            return Err(ArenaError::DuplicateColor(name));
        }
        let map = map.with_name(name.clone());
        self.colors.push(Color { name, map });
        Ok(self.colors.len() - 1)
    }

    pub fn edge(&mut self, source: NodeId, color: ColorId, target: NodeId) -> Result<EdgeId, ArenaError> {
        for v in [source, target] {
            if v >= self.nodes.len() {
                return Err(ArenaError::NodeOutOfRange(v));
            }
        }
        if color >= self.colors.len() {
            return Err(ArenaError::ColorOutOfRange(color));
        }
        self.edges.push(Edge { source, color, target });
        Ok(self.edges.len() - 1)
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn color_id(&self, name: &str) -> Option<ColorId> {
        self.colors.iter().position(|c| c.name == name)
    }

    /// Adds an edge by node and color names.
    pub fn edge_by_name(&mut self, source: &str, color: &str, target: &str) -> Result<EdgeId, ArenaError> {
        let s = self.node_id(source).ok_or_else(|| ArenaError::UnknownNode(source.into()))?;
        let c = self.color_id(color).ok_or_else(|| ArenaError::UnknownColor(color.into()))?;
        let t = self.node_id(target).ok_or_else(|| ArenaError::UnknownNode(target.into()))?;
        self.edge(s, c, t)
    }

    pub fn build(self) -> Arena {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            out[edge.source].push(e);
        }
        Arena { nodes: self.nodes, colors: self.colors, edges: self.edges, out }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

/// Splits a line into whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

/// Strips a trailing `# comment`.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(body, _)| body)
}

struct LineCtx {
    line: usize,
}

impl LineCtx {
    fn err(&self, column: usize, reason: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, reason: reason.into() }
    }
}

fn parse_arena(text: &str) -> Result<Arena, ParseError> {
    let mut builder = ArenaBuilder::default();
    let mut seen_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let ctx = LineCtx { line: idx + 1 };
        let body = strip_comment(raw);
        let toks = tokens(body);
        let Some(&(col0, keyword)) = toks.first() else { continue };
        if !seen_header {
            if toks.len() == 2 && keyword == "arena" && toks[1].1 == "v1" {
                seen_header = true;
                continue;
            }
            return Err(ctx.err(col0, "expected header `arena v1`"));
        }
        match keyword {
            "node" => {
                if toks.len() != 3 {
                    return Err(ctx.err(col0, "expected `node <id> P|A`"));
                }
                let owner = match toks[2].1 {
                    "P" => Owner::Protagonist,
                    "A" => Owner::Antagonist,
                    other => return Err(ctx.err(toks[2].0, format!("unknown owner `{other}`"))),
                };
                builder.node(toks[1].1, owner).map_err(|e| ctx.err(toks[1].0, e.to_string()))?;
            }
            "color" => {
                if toks.len() < 3 {
                    return Err(ctx.err(col0, "expected `color <name> ...`"));
                }
                let map = parse_color(&ctx, body, &toks[2..])?;
                builder.color(toks[1].1, map).map_err(|e| ctx.err(toks[1].0, e.to_string()))?;
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(ctx.err(col0, "expected `edge <src> <color> <dst>`"));
                }
                let s = builder
                    .node_id(toks[1].1)
                    .ok_or_else(|| ctx.err(toks[1].0, format!("unknown node `{}`", toks[1].1)))?;
                let c = builder
                    .color_id(toks[2].1)
                    .ok_or_else(|| ctx.err(toks[2].0, format!("unknown color `{}`", toks[2].1)))?;
                let t = builder
                    .node_id(toks[3].1)
                    .ok_or_else(|| ctx.err(toks[3].0, format!("unknown node `{}`", toks[3].1)))?;
                builder.edge(s, c, t).map_err(|e| ctx.err(col0, e.to_string()))?;
            }
            other => return Err(ctx.err(col0, format!("unknown directive `{other}`"))),
        }
    }
    if !seen_header {
        return Err(ParseError { line: 1, column: 1, reason: "missing header `arena v1`".into() });
    }
    Ok(builder.build())
}

fn parse_color(ctx: &LineCtx, body: &str, rest: &[(usize, &str)]) -> Result<ColorMap, ParseError> {
    let (col, first) = rest[0];
    if let Some(name) = first.strip_prefix("builtin=") {
        if rest.len() != 1 {
            return Err(ctx.err(rest[1].0, "unexpected token after builtin"));
        }
        let which: NamedMap = name.parse().map_err(|e: crate::omega::MapError| ctx.err(col + 8, e.to_string()))?;
        return Ok(ColorMap::named(which));
    }
    if first == "incr" {
        let mut prefix = None;
        let mut tail = None;
        for &(c, tok) in &rest[1..] {
            if let Some(bits) = tok.strip_prefix("prefix=") {
                prefix = Some(parse_bits(bits).ok_or_else(|| ctx.err(c, format!("bad bit string `{bits}`")))?);
            } else if let Some(t) = tok.strip_prefix("tail=") {
                tail = Some(match t {
                    "0" => false,
                    "1" => true,
                    _ => return Err(ctx.err(c, format!("bad tail bit `{t}`"))),
                });
            } else {
                return Err(ctx.err(c, format!("unexpected `{tok}`")));
            }
        }
        let prefix = prefix.ok_or_else(|| ctx.err(col, "missing prefix="))?;
        let tail = tail.ok_or_else(|| ctx.err(col, "missing tail="))?;
        return Ok(ColorMap::incremental(&prefix, tail));
    }

    // Explicit form. The table may contain spaces, so it is read from the raw
    // line up to the closing bracket.
    let mut threshold = None;
    let mut shift = None;
    let mut tail = None;
    let mut table_col = None;
    for &(c, tok) in rest {
        if let Some(v) = tok.strip_prefix("T=") {
            threshold = Some(v.parse::<u64>().map_err(|_| ctx.err(c, format!("bad threshold `{v}`")))?);
        } else if let Some(v) = tok.strip_prefix("d=") {
            shift = Some(v.parse::<i64>().map_err(|_| ctx.err(c, format!("bad shift `{v}`")))?);
        } else if let Some(v) = tok.strip_prefix("beta=") {
            tail = Some(v.parse::<BitMap>().map_err(|e| ctx.err(c, e.to_string()))?);
        } else if tok.starts_with("table=") {
            table_col = Some(c);
            break;
        } else {
            return Err(ctx.err(c, format!("unexpected `{tok}`")));
        }
    }
    let threshold = threshold.ok_or_else(|| ctx.err(col, "missing T="))?;
    let shift = shift.ok_or_else(|| ctx.err(col, "missing d="))?;
    let tail = tail.ok_or_else(|| ctx.err(col, "missing beta="))?;
    let table_col = table_col.ok_or_else(|| ctx.err(col, "missing table="))?;
    let byte_start: usize = body.char_indices().nth(table_col - 1).map(|(b, _)| b).unwrap_or(body.len());
    let after = &body[byte_start + "table=".len()..];
    let inner = after
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ctx.err(table_col, "table must be `[...]`"))?;
    let mut slots: Vec<Option<OmegaPoint>> = vec![None; 2 * threshold as usize];
    let compact: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
    if !compact.is_empty() {
        for entry in split_entries(&compact) {
            let (from, to) = entry
                .split_once("->")
                .ok_or_else(|| ctx.err(table_col, format!("bad table entry `{entry}`")))?;
            let from: OmegaPoint = from.parse().map_err(|e: crate::omega::MapError| ctx.err(table_col, e.to_string()))?;
            let to: OmegaPoint = to.parse().map_err(|e: crate::omega::MapError| ctx.err(table_col, e.to_string()))?;
            if from.layer >= threshold {
                return Err(ctx.err(table_col, format!("table entry {from} is not below T={threshold}")));
            }
            let slot = &mut slots[2 * from.layer as usize + from.bit as usize];
            if slot.is_some() {
                return Err(ctx.err(table_col, format!("duplicate table entry for {from}")));
            }
            *slot = Some(to);
        }
    }
    let table = slots
        .iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| ctx.err(table_col, format!("missing table entry for ({},{})", i / 2, i % 2))))
        .collect::<Result<Vec<_>, _>>()?;
    ColorMap::new(threshold, table, shift, tail).map_err(|e| ctx.err(col, e.to_string()))
}

/// Splits `(a,b)->(c,d),(e,f)->(g,h)` at the commas outside parentheses.
fn split_entries(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub(crate) fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::omega::pt;

    #[test]
    fn fact1_arena_is_valid() {
        assert!(fixtures::fact1_arena().validate().is_empty());
    }

    #[test]
    fn sink_node_is_reported() {
        let mut b = Arena::builder();
        b.node("lonely", Owner::Protagonist).unwrap();
        let violations = b.build().validate();
        assert_eq!(violations, vec![Violation::SinkNode("lonely".into())]);
    }

    #[test]
    fn non_monotone_palette_is_reported() {
        let mut b = Arena::builder();
        let v = b.node("v", Owner::Protagonist).unwrap();
        let bad = ColorMap::new(1, vec![pt(5, 0), pt(5, 1)], 0, BitMap::Identity).unwrap();
        let c = b.color("bad", bad).unwrap();
        b.edge(v, c, v).unwrap();
        assert_eq!(b.build().validate(), vec![Violation::NonMonotoneColor("bad".into())]);
    }

    #[test]
    fn empty_arena_is_reported() {
        assert_eq!(Arena::builder().build().validate(), vec![Violation::Empty]);
    }

    #[test]
    fn ant_positions_on_fact1() {
        let a = fixtures::fact1_arena();
        let circle = a.node_id("circle").unwrap();
        assert_eq!(a.ant_of(&Path::empty(circle)).unwrap(), OmegaPoint::ZERO);
        let [_, v, f0, _] = fixtures::fact1_edges();
        assert_eq!(a.ant_of(&a.path(circle, vec![v]).unwrap()).unwrap(), pt(1, 1));
        assert_eq!(a.ant_of(&a.path(circle, vec![v, f0, f0]).unwrap()).unwrap(), pt(3, 1));
        assert_eq!(a.layer_of(&a.path(circle, vec![v, f0, f0]).unwrap()).unwrap(), 3);
    }

    #[test]
    fn path_mismatch_is_an_error() {
        let a = fixtures::fact1_arena();
        let square = a.node_id("square").unwrap();
        let [u, ..] = fixtures::fact1_edges();
        assert!(matches!(a.path(square, vec![u]), Err(ArenaError::NotAdjacent { .. })));
        assert!(matches!(
            a.ant_of(&Path { start: square, edges: vec![99] }),
            Err(ArenaError::EdgeOutOfRange(99))
        ));
    }

    #[test]
    fn fact1_round_trip() {
        let a = fixtures::fact1_arena();
        let text = a.serialize();
        assert_eq!(text.lines().filter(|l| l.starts_with("edge ")).count(), 4);
        assert_eq!(Arena::parse(&text).unwrap(), a);
    }

    #[test]
    fn node_on_both_sides_is_rejected() {
        let err = Arena::parse("arena v1\nnode x P\nnode x A\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.reason.contains("`x`"), "{err}");
        assert!(err.reason.contains("both players"), "{err}");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Arena::parse("arena v1\nnode x P\nedge x nope x\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 8));
        assert!(err.reason.contains("unknown color"));

        let err = Arena::parse("arena v1\nnode x P\nnode x P\n").unwrap_err();
        assert!(err.reason.contains("duplicate node"));

        let err = Arena::parse("node x P\n").unwrap_err();
        assert_eq!(err.line, 1);

        let err = Arena::parse("arena v1\ncolor g T=1 d=0 beta=id table=[(0,0)->(0,0)]\n").unwrap_err();
        assert!(err.reason.contains("missing table entry"), "{err}");
    }

    #[test]
    fn sugar_forms_parse() {
        let text = "arena v1\n# sugar\nnode a P\ncolor u builtin=u\ncolor p incr prefix=10 tail=1\n\
                    color g T=1 d=0 beta=c1 table=[(0,0) -> (0,0), (0,1)->(0,1)]\nedge a p a # loop\n";
        let a = Arena::parse(text).unwrap();
        assert_eq!(a.color(0).map.apply(pt(0, 0)), pt(1, 0));
        assert_eq!(a.color(1).map, ColorMap::incremental(&[true, false], true).with_name("p"));
        assert_eq!(a.color(2).map.apply(pt(4, 0)), pt(4, 1));
        assert_eq!(Arena::parse(&a.serialize()).unwrap(), a);
    }

    #[test]
    fn layer_change_per_step_is_bounded() {
        let a = fixtures::fact1_arena();
        let circle = a.node_id("circle").unwrap();
        let [_, v, f0, f1] = fixtures::fact1_edges();
        let walk = [v, f0, f1, f0, f1, f1];
        let mut prev = a.ant_of(&Path::empty(circle)).unwrap();
        for i in 1..=walk.len() {
            let p = a.path(circle, walk[..i].to_vec()).unwrap();
            let e = walk[i - 1];
            let cur = a.ant_of(&p).unwrap();
            assert_eq!(cur, a.edge_map(e).apply(prev));
            assert!(cur.layer.abs_diff(prev.layer) <= a.edge_map(e).step_bound());
            prev = cur;
        }
    }
}
