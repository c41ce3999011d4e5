//! Memory structures, finite-memory Protagonist strategies and the
//! strategy–arena product.
//!
//! A memory structure is a deterministic automaton reading the edges of a
//! play. A *chromatic* one only sees edge colors, so its table is indexed by
//! `(state, color)`; a *general* one is indexed by `(state, edge)`. Both are
//! bound to a particular arena by the sizes of those tables.
//!
//! # Text format
//!
//! ```text
//! strategy v1
//! memory kind=general states=2 init=0
//! trans 0 1 1        # general: <state> <edge index> <state>
//! move square 0 2    # <node> <state> <edge index>
//! ```
//!
//! For `kind=chromatic` the middle field of `trans` is a color id instead of
//! an edge index. Every `(state, symbol)` pair must be given.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{strip_comment, tokens, Arena, EdgeId, NodeId, ParseError, Path};

pub type StateId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MemoryKind {
    General,
    Chromatic,
}

impl fmt::Display for MemoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MemoryKind::General => "general",
            MemoryKind::Chromatic => "chromatic",
        })
    }
}

impl std::str::FromStr for MemoryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(MemoryKind::General),
            "chromatic" => Ok(MemoryKind::Chromatic),
            other => Err(format!("unknown memory kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("memory structure needs at least one state")]
    NoStates,
    #[error("initial state {0} out of range")]
    BadInitial(StateId),
    #[error("transition table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("transition target {0} out of range")]
    BadState(StateId),
    #[error("next-move table has {got} entries, expected {expected}")]
    MoveTableSize { expected: usize, got: usize },
    #[error("no move given for node `{node}` in state {state}")]
    MissingMove { node: String, state: StateId },
    #[error("edge {edge} does not leave node `{node}`")]
    ForeignEdge { node: String, edge: EdgeId },
    #[error("node `{0}` belongs to Antagonist and takes no move")]
    AntagonistMove(String),
    #[error("script edge {edge} is not a legal move at node `{node}` (step {step})")]
    IllegalScript { step: usize, edge: EdgeId, node: String },
}

/// `⟨M, m_init, δ⟩` with `M = {0, …, states-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MemoryStructure {
    states: usize,
    initial: StateId,
    kind: MemoryKind,
    /// Row-major `(state, symbol)` table; a symbol is an edge index for
    /// general memory and a color index for chromatic memory.
    table: Vec<StateId>,
    width: usize,
}

impl MemoryStructure {
    /// General memory over `edge_count` edges; `table[m * edge_count + e]`.
    pub fn general(states: usize, edge_count: usize, table: Vec<StateId>) -> Result<Self, StrategyError> {
        Self::with_kind(MemoryKind::General, states, 0, edge_count, table)
    }

    /// Chromatic memory over `color_count` colors; `sigma[m * color_count + c]`.
    pub fn chromatic(states: usize, color_count: usize, sigma: Vec<StateId>) -> Result<Self, StrategyError> {
        Self::with_kind(MemoryKind::Chromatic, states, 0, color_count, sigma)
    }

    pub fn with_kind(
        kind: MemoryKind,
        states: usize,
        initial: StateId,
        width: usize,
        table: Vec<StateId>,
    ) -> Result<Self, StrategyError> {
        if states == 0 {
            return Err(StrategyError::NoStates);
        }
        if initial >= states {
            return Err(StrategyError::BadInitial(initial));
        }
        if table.len() != states * width {
            return Err(StrategyError::TableSize { expected: states * width, got: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&m| m >= states) {
            return Err(StrategyError::BadState(bad));
        }
        Ok(MemoryStructure { states, initial, kind, table, width })
    }

    /// The one-state structure; strategies on top of it are positional.
    pub fn trivial(arena: &Arena) -> Self {
        MemoryStructure {
            states: 1,
            initial: 0,
            kind: MemoryKind::Chromatic,
            table: vec![0; arena.color_count()],
            width: arena.color_count(),
        }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn kind(&self) -> MemoryKind {
        self.kind
    }

    /// Number of symbols (edges or colors) per state row.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn raw_table(&self) -> &[StateId] {
        &self.table
    }

    /// Whether the table sizes match `arena`.
    pub fn fits(&self, arena: &Arena) -> bool {
        match self.kind {
            MemoryKind::General => self.width == arena.edge_count(),
            MemoryKind::Chromatic => self.width == arena.color_count(),
        }
    }

    /// `δ(m, e)`.
    pub fn transition(&self, arena: &Arena, m: StateId, e: EdgeId) -> StateId {
        let symbol = match self.kind {
            MemoryKind::General => e,
            MemoryKind::Chromatic => arena.edge(e).color,
        };
        self.table[m * self.width + symbol]
    }

    /// `δ(m, s)` for a finite edge sequence `s` (left fold).
    pub fn update(&self, arena: &Arena, m: StateId, edges: &[EdgeId]) -> StateId {
        edges.iter().fold(m, |m, &e| self.transition(arena, m, e))
    }

    /// Whether `δ(m, e₁) = δ(m, e₂)` whenever `e₁` and `e₂` share a color.
    pub fn is_color_consistent(&self, arena: &Arena) -> bool {
        (0..self.states).all(|m| {
            let mut seen: HashMap<usize, StateId> = HashMap::new();
            (0..arena.edge_count()).all(|e| {
                let next = self.transition(arena, m, e);
                *seen.entry(arena.edge(e).color).or_insert(next) == next
            })
        })
    }

    /// Re-expresses this structure over edges.
    pub fn to_general(&self, arena: &Arena) -> MemoryStructure {
        let width = arena.edge_count();
        let table = (0..self.states)
            .flat_map(|m| (0..width).map(move |e| (m, e)))
            .map(|(m, e)| self.transition(arena, m, e))
            .collect();
        MemoryStructure { states: self.states, initial: self.initial, kind: MemoryKind::General, table, width }
    }
}

/// `δ(m, p)`: the memory state reached from `m` after feeding the edges of `p`.
pub fn memory_update(arena: &Arena, memory: &MemoryStructure, m: StateId, path: &Path) -> StateId {
    memory.update(arena, m, &path.edges)
}

/// A strategy built on top of a memory structure, given by its next-move
/// function `(Protagonist node, state) ↦ edge`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMemoryStrategy {
    memory: MemoryStructure,
    /// `moves[v * states + m]`; `None` exactly at Antagonist nodes.
    moves: Vec<Option<EdgeId>>,
}

impl FiniteMemoryStrategy {
    pub fn new(arena: &Arena, memory: MemoryStructure, moves: Vec<Option<EdgeId>>) -> Result<Self, StrategyError> {
        let expected = arena.node_count() * memory.states();
        if moves.len() != expected {
            return Err(StrategyError::MoveTableSize { expected, got: moves.len() });
        }
        if !memory.fits(arena) {
            let expected = match memory.kind() {
                MemoryKind::General => arena.edge_count(),
                MemoryKind::Chromatic => arena.color_count(),
            } * memory.states();
            return Err(StrategyError::TableSize { expected, got: memory.raw_table().len() });
        }
        for v in 0..arena.node_count() {
            for m in 0..memory.states() {
                let node = arena.node(v).name.clone();
                match (arena.is_protagonist(v), moves[v * memory.states() + m]) {
                    (true, None) => return Err(StrategyError::MissingMove { node, state: m }),
                    (true, Some(e)) => {
                        if e >= arena.edge_count() || arena.edge(e).source != v {
                            return Err(StrategyError::ForeignEdge { node, edge: e });
                        }
                    }
                    (false, Some(_)) => return Err(StrategyError::AntagonistMove(node)),
                    (false, None) => {}
                }
            }
        }
        Ok(FiniteMemoryStrategy { memory, moves })
    }

    /// Builds the move table from a function of `(node, state)`, consulted at
    /// Protagonist nodes only.
    pub fn from_fn(
        arena: &Arena,
        memory: MemoryStructure,
        mut choose: impl FnMut(NodeId, StateId) -> EdgeId,
    ) -> Result<Self, StrategyError> {
        let states = memory.states();
        let moves = (0..arena.node_count())
            .flat_map(|v| (0..states).map(move |m| (v, m)))
            .map(|(v, m)| arena.is_protagonist(v).then(|| choose(v, m)))
            .collect();
        Self::new(arena, memory, moves)
    }

    /// A positional strategy: `choice(v)` at every Protagonist node.
    pub fn positional(arena: &Arena, choice: impl Fn(NodeId) -> EdgeId) -> Result<Self, StrategyError> {
        Self::from_fn(arena, MemoryStructure::trivial(arena), |v, _| choice(v))
    }

    pub fn memory(&self) -> &MemoryStructure {
        &self.memory
    }

    pub fn states(&self) -> usize {
        self.memory.states()
    }

    /// `n_S(v, m)`; `None` at Antagonist nodes.
    pub fn next_move(&self, v: NodeId, m: StateId) -> Option<EdgeId> {
        self.moves[v * self.memory.states() + m]
    }

    pub fn moves(&self) -> &[Option<EdgeId>] {
        &self.moves
    }

    /// State of the strategy after `path`, started in the initial state.
    pub fn state_after(&self, arena: &Arena, path: &Path) -> StateId {
        memory_update(arena, &self.memory, self.memory.initial(), path)
    }

    /// The move after a whole history, if it ends at a Protagonist node.
    pub fn move_after(&self, arena: &Arena, path: &Path) -> Option<EdgeId> {
        self.next_move(path.target(arena), self.state_after(arena, path))
    }

    /// Whether the finite path is consistent with this strategy.
    pub fn is_consistent(&self, arena: &Arena, path: &Path) -> bool {
        let mut at = path.start;
        let mut m = self.memory.initial();
        for &e in &path.edges {
            if arena.edge(e).source != at {
                return false;
            }
            if let Some(chosen) = self.next_move(at, m) {
                if chosen != e {
                    return false;
                }
            }
            m = self.memory.transition(arena, m, e);
            at = arena.edge(e).target;
        }
        true
    }

    /// Same memory, moves replaced by `choose(v, m)` where it returns `Some`.
    pub fn with_moves(&self, arena: &Arena, choose: impl Fn(NodeId, StateId) -> Option<EdgeId>) -> Result<Self, StrategyError> {
        Self::from_fn(arena, self.memory.clone(), |v, m| {
            choose(v, m).unwrap_or_else(|| self.next_move(v, m).expect("protagonist node"))
        })
    }
}

/// Plays `strategy` from `start`, taking Antagonist moves from `script` in
/// order. Stops when the script runs out at an Antagonist node or after
/// `step_limit` edges.
pub fn play(
    arena: &Arena,
    strategy: &FiniteMemoryStrategy,
    start: NodeId,
    script: &[EdgeId],
    step_limit: usize,
) -> Result<Path, StrategyError> {
    let mut edges = Vec::new();
    let mut at = start;
    let mut m = strategy.memory().initial();
    let mut script = script.iter().copied();
    while edges.len() < step_limit {
        let e = match strategy.next_move(at, m) {
            Some(e) => e,
            None => match script.next() {
                Some(e) => {
                    if e >= arena.edge_count() || arena.edge(e).source != at {
                        return Err(StrategyError::IllegalScript {
                            step: edges.len(),
                            edge: e,
                            node: arena.node(at).name.clone(),
                        });
                    }
                    e
                }
                None => break,
            },
        };
        edges.push(e);
        m = strategy.memory().transition(arena, m, e);
        at = arena.edge(e).target;
    }
    Ok(Path { start, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductEdge {
    pub target: usize,
    pub arena_edge: EdgeId,
}

/// The synchronized graph of arena nodes and memory states reachable from
/// `(v, m_init)` for every node `v`. Protagonist product nodes keep only the
/// strategy's move; Antagonist product nodes keep every arena edge.
#[derive(Debug, Clone)]
pub struct ProductGraph {
    nodes: Vec<(NodeId, StateId)>,
    index: HashMap<(NodeId, StateId), usize>,
    succ: Vec<Vec<ProductEdge>>,
}

impl ProductGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> (NodeId, StateId) {
        self.nodes[i]
    }

    pub fn index_of(&self, v: NodeId, m: StateId) -> Option<usize> {
        self.index.get(&(v, m)).copied()
    }

    pub fn successors(&self, i: usize) -> &[ProductEdge] {
        &self.succ[i]
    }
}

pub fn product(arena: &Arena, strategy: &FiniteMemoryStrategy) -> ProductGraph {
    let memory = strategy.memory();
    let mut graph = ProductGraph { nodes: Vec::new(), index: HashMap::new(), succ: Vec::new() };
    let mut queue = std::collections::VecDeque::new();
    let intern = |graph: &mut ProductGraph, queue: &mut std::collections::VecDeque<usize>, key: (NodeId, StateId)| {
        *graph.index.entry(key).or_insert_with(|| {
            graph.nodes.push(key);
            graph.succ.push(Vec::new());
            queue.push_back(graph.nodes.len() - 1);
            graph.nodes.len() - 1
        })
    };
    for v in 0..arena.node_count() {
        intern(&mut graph, &mut queue, (v, memory.initial()));
    }
    while let Some(i) = queue.pop_front() {
        let (v, m) = graph.nodes[i];
        let choices: Vec<EdgeId> = match strategy.next_move(v, m) {
            Some(e) => vec![e],
            None => arena.out_edges(v).to_vec(),
        };
        for e in choices {
            let key = (arena.edge(e).target, memory.transition(arena, m, e));
            let j = intern(&mut graph, &mut queue, key);
            graph.succ[i].push(ProductEdge { target: j, arena_edge: e });
        }
    }
    graph
}

/// Mixed-radix counter over a fixed list of digit bases; the first digit
/// varies fastest.
#[derive(Debug, Clone)]
pub(crate) struct Odometer {
    bases: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    pub(crate) fn new(bases: Vec<usize>) -> Self {
        let next = (!bases.contains(&0)).then(|| vec![0; bases.len()]);
        Odometer { bases, next }
    }

    /// Total number of digit vectors, if it fits in `u64`.
    pub(crate) fn count(bases: &[usize]) -> Option<u64> {
        bases.iter().try_fold(1u64, |acc, &b| acc.checked_mul(b as u64))
    }

    pub(crate) fn advance(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for (digit, &base) in succ.iter_mut().zip(&self.bases) {
            *digit += 1;
            if *digit < base {
                self.next = Some(succ);
                break;
            }
            *digit = 0;
        }
        Some(current)
    }
}

/// Canonical exhaustive enumeration of memory structures with exactly `k`
/// states and initial state 0. Structures with fewer states are covered by
/// padding with unreachable states.
pub struct MemoryEnumeration {
    k: usize,
    width: usize,
    kind: MemoryKind,
    odometer: Odometer,
}

pub fn enumerate_memories(arena: &Arena, k: usize, kind: MemoryKind) -> MemoryEnumeration {
    assert!(k >= 1, "memory size bound must be positive");
    let width = match kind {
        MemoryKind::General => arena.edge_count(),
        MemoryKind::Chromatic => arena.color_count(),
    };
    MemoryEnumeration { k, width, kind, odometer: Odometer::new(vec![k; k * width]) }
}

impl MemoryEnumeration {
    /// `k^(k·width)`, or `None` on overflow.
    pub fn total(&self) -> Option<u64> {
        Odometer::count(&self.odometer.bases)
    }
}

impl Iterator for MemoryEnumeration {
    type Item = MemoryStructure;

    fn next(&mut self) -> Option<Self::Item> {
        let table = self.odometer.advance()?;
        Some(MemoryStructure { states: self.k, initial: 0, kind: self.kind, table, width: self.width })
    }
}

/// All next-move tables for `memory` on `arena`, in canonical order.
pub struct MoveTables<'a> {
    arena: &'a Arena,
    memory: MemoryStructure,
    slots: Vec<(NodeId, StateId)>,
    odometer: Odometer,
}

pub fn enumerate_moves<'a>(arena: &'a Arena, memory: &MemoryStructure) -> MoveTables<'a> {
    let slots: Vec<(NodeId, StateId)> = arena
        .protagonist_nodes()
        .flat_map(|v| (0..memory.states()).map(move |m| (v, m)))
        .collect();
    let bases = slots.iter().map(|&(v, _)| arena.out_edges(v).len()).collect();
    MoveTables { arena, memory: memory.clone(), slots, odometer: Odometer::new(bases) }
}

impl MoveTables<'_> {
    pub fn total(&self) -> Option<u64> {
        Odometer::count(&self.odometer.bases)
    }
}

impl Iterator for MoveTables<'_> {
    type Item = FiniteMemoryStrategy;

    fn next(&mut self) -> Option<Self::Item> {
        let digits = self.odometer.advance()?;
        let states = self.memory.states();
        let mut moves = vec![None; self.arena.node_count() * states];
        for (&(v, m), &d) in self.slots.iter().zip(&digits) {
            moves[v * states + m] = Some(self.arena.out_edges(v)[d]);
        }
        Some(FiniteMemoryStrategy { memory: self.memory.clone(), moves })
    }
}

/// Serializes a strategy in the `strategy v1` format.
pub fn serialize_strategy(arena: &Arena, strategy: &FiniteMemoryStrategy) -> String {
    let memory = strategy.memory();
    let mut out = String::from("strategy v1\n");
    let _ = writeln!(out, "memory kind={} states={} init={}", memory.kind(), memory.states(), memory.initial());
    for m in 0..memory.states() {
        for symbol in 0..memory.width() {
            let label = match memory.kind() {
                MemoryKind::General => symbol.to_string(),
                MemoryKind::Chromatic => arena.color(symbol).name.clone(),
            };
            let _ = writeln!(out, "trans {m} {label} {}", memory.raw_table()[m * memory.width() + symbol]);
        }
    }
    for v in arena.protagonist_nodes() {
        for m in 0..memory.states() {
            if let Some(e) = strategy.next_move(v, m) {
                let _ = writeln!(out, "move {} {m} {e}", arena.node(v).name);
            }
        }
    }
    out
}

/// `(kind, states, initial, partial transition table, width)` from the
/// `memory` line.
type MemoryShape = (MemoryKind, usize, StateId, Vec<Option<StateId>>, usize);

/// Parses the `strategy v1` format against `arena`.
pub fn parse_strategy(arena: &Arena, text: &str) -> Result<FiniteMemoryStrategy, ParseError> {
    let mut header = false;
    let mut shape: Option<MemoryShape> = None;
    let mut moves: Vec<Option<EdgeId>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let err = |column: usize, reason: String| ParseError { line, column, reason };
        let toks = tokens(strip_comment(raw));
        let Some(&(col0, keyword)) = toks.first() else { continue };
        if !header {
            if toks.len() == 2 && keyword == "strategy" && toks[1].1 == "v1" {
                header = true;
                continue;
            }
            return Err(err(col0, "expected header `strategy v1`".into()));
        }
        match keyword {
            "memory" => {
                if shape.is_some() {
                    return Err(err(col0, "duplicate `memory` line".into()));
                }
                let mut kind = None;
                let mut states = None;
                let mut init = None;
                for &(c, tok) in &toks[1..] {
                    let (key, value) = tok.split_once('=').ok_or_else(|| err(c, format!("expected key=value, got `{tok}`")))?;
                    match key {
                        "kind" => kind = Some(value.parse::<MemoryKind>().map_err(|e| err(c, e))?),
                        "states" => {
                            states = Some(value.parse::<usize>().ok().filter(|&k| k > 0).ok_or_else(|| err(c, format!("bad state count `{value}`")))?)
                        }
                        "init" => init = Some(value.parse::<usize>().map_err(|_| err(c, format!("bad initial state `{value}`")))?),
                        _ => return Err(err(c, format!("unknown key `{key}`"))),
                    }
                }
                let kind = kind.ok_or_else(|| err(col0, "missing kind=".into()))?;
                let states = states.ok_or_else(|| err(col0, "missing states=".into()))?;
                let init = init.unwrap_or(0);
                if init >= states {
                    return Err(err(col0, format!("initial state {init} out of range")));
                }
                let width = match kind {
                    MemoryKind::General => arena.edge_count(),
                    MemoryKind::Chromatic => arena.color_count(),
                };
                shape = Some((kind, states, init, vec![None; states * width], width));
                moves = vec![None; arena.node_count() * states];
            }
            "trans" => {
                let (kind, states, _, table, width) =
                    shape.as_mut().ok_or_else(|| err(col0, "`trans` before `memory`".into()))?;
                if toks.len() != 4 {
                    return Err(err(col0, "expected `trans <state> <symbol> <state>`".into()));
                }
                let from = parse_state(toks[1], *states).map_err(|r| err(toks[1].0, r))?;
                let to = parse_state(toks[3], *states).map_err(|r| err(toks[3].0, r))?;
                let symbol = match kind {
                    MemoryKind::General => toks[2]
                        .1
                        .parse::<usize>()
                        .ok()
                        .filter(|&e| e < arena.edge_count())
                        .ok_or_else(|| err(toks[2].0, format!("unknown edge `{}`", toks[2].1)))?,
                    MemoryKind::Chromatic => arena
                        .color_id(toks[2].1)
                        .ok_or_else(|| err(toks[2].0, format!("unknown color `{}`", toks[2].1)))?,
                };
                let slot = &mut table[from * *width + symbol];
                if slot.is_some() {
                    return Err(err(col0, format!("duplicate transition for state {from}, symbol `{}`", toks[2].1)));
                }
                *slot = Some(to);
            }
            "move" => {
                let (_, states, ..) = shape.as_ref().ok_or_else(|| err(col0, "`move` before `memory`".into()))?;
                if toks.len() != 4 {
                    return Err(err(col0, "expected `move <node> <state> <edge>`".into()));
                }
                let v = arena
                    .node_id(toks[1].1)
                    .ok_or_else(|| err(toks[1].0, format!("unknown node `{}`", toks[1].1)))?;
                let m = parse_state(toks[2], *states).map_err(|r| err(toks[2].0, r))?;
                let e = toks[3]
                    .1
                    .parse::<usize>()
                    .ok()
                    .filter(|&e| e < arena.edge_count())
                    .ok_or_else(|| err(toks[3].0, format!("unknown edge `{}`", toks[3].1)))?;
                let slot = &mut moves[v * states + m];
                if slot.is_some() {
                    return Err(err(col0, format!("duplicate move for `{}` in state {m}", toks[1].1)));
                }
                *slot = Some(e);
            }
            other => return Err(err(col0, format!("unknown directive `{other}`"))),
        }
    }
    let at_end = |reason: String| ParseError { line: last_line.max(1), column: 1, reason };
    if !header {
        return Err(at_end("missing header `strategy v1`".into()));
    }
    let (kind, states, init, table, width) = shape.ok_or_else(|| at_end("missing `memory` line".into()))?;
    let table = table
        .iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| at_end(format!("missing transition for state {}, symbol {}", i / width, i % width))))
        .collect::<Result<Vec<_>, _>>()?;
    let memory = MemoryStructure::with_kind(kind, states, init, width, table).map_err(|e| at_end(e.to_string()))?;
    FiniteMemoryStrategy::new(arena, memory, moves).map_err(|e| at_end(e.to_string()))
}

fn parse_state((_, tok): (usize, &str), states: usize) -> Result<StateId, String> {
    tok.parse::<usize>()
        .ok()
        .filter(|&m| m < states)
        .ok_or_else(|| format!("bad state `{tok}`"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Owner;
    use crate::fixtures;
    use crate::omega::{pt, ColorMap, NamedMap};

    /// One Protagonist node with loops `p0` (edge 0) and `p1` (edge 1).
    fn two_loop_arena() -> Arena {
        let mut b = Arena::builder();
        let v = b.node("v", Owner::Protagonist).unwrap();
        let p0 = b.color("p0", ColorMap::incremental(&[false], false)).unwrap();
        let p1 = b.color("p1", ColorMap::incremental(&[true], false)).unwrap();
        b.edge(v, p0, v).unwrap();
        b.edge(v, p1, v).unwrap();
        b.build()
    }

    #[test]
    fn memory_update_examples() {
        let a = two_loop_arena();
        // parity of p1: p0 keeps the state, p1 flips it
        let parity = MemoryStructure::chromatic(2, 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(memory_update(&a, &parity, 1, &Path::empty(0)), 1);
        assert_eq!(memory_update(&a, &parity, 0, &a.path(0, vec![0, 1, 1]).unwrap()), 0);
        assert_eq!(memory_update(&a, &parity, 0, &a.path(0, vec![0, 1]).unwrap()), 1);

        let mut b = Arena::builder();
        let x = b.node("x", Owner::Antagonist).unwrap();
        let u = b.color("u", ColorMap::named(NamedMap::U)).unwrap();
        b.edge(x, u, x).unwrap();
        b.edge(x, u, x).unwrap();
        let twins = b.build();
        let general = MemoryStructure::general(2, 2, vec![0, 1, 0, 1]).unwrap();
        assert_ne!(
            memory_update(&twins, &general, 0, &Path { start: x, edges: vec![0] }),
            memory_update(&twins, &general, 0, &Path { start: x, edges: vec![1] })
        );
        assert!(!general.is_color_consistent(&twins));
        assert!(parity.is_color_consistent(&a));
    }

    #[test]
    fn play_examples() {
        let a = fixtures::fact1_arena();
        let circle = a.node_id("circle").unwrap();
        let [u, v, f0, _] = fixtures::fact1_edges();

        let winner = fixtures::fact1_winner(&a);
        let p = play(&a, &winner, circle, &[u], 3).unwrap();
        assert_eq!(p.edges, vec![u, f0, f0]);
        for i in 1..=3 {
            let prefix = Path { start: circle, edges: p.edges[..i].to_vec() };
            assert_eq!(a.ant_of(&prefix).unwrap(), pt(1, 0));
        }

        let always_f0 = fixtures::fact1_positional(&a, f0);
        let p = play(&a, &always_f0, circle, &[v], 4).unwrap();
        let layers: Vec<u64> = (1..=4)
            .map(|i| a.layer_of(&Path { start: circle, edges: p.edges[..i].to_vec() }).unwrap())
            .collect();
        assert_eq!(layers, vec![1, 2, 3, 4]);

        let square = a.node_id("square").unwrap();
        assert_eq!(play(&a, &always_f0, square, &[], 17).unwrap().len(), 17);
        // the script runs out at the Antagonist node
        assert_eq!(play(&a, &always_f0, circle, &[], 17).unwrap().len(), 0);
    }

    #[test]
    fn illegal_script_is_rejected() {
        let a = fixtures::fact1_arena();
        let [_, _, f0, _] = fixtures::fact1_edges();
        let s = fixtures::fact1_positional(&a, f0);
        assert_eq!(
            play(&a, &s, 0, &[f0], 5),
            Err(StrategyError::IllegalScript { step: 0, edge: f0, node: "circle".into() })
        );
    }

    #[test]
    fn product_examples() {
        let a = fixtures::fact1_arena();
        let [_, _, f0, _] = fixtures::fact1_edges();
        let g = product(&a, &fixtures::fact1_positional(&a, f0));
        assert!(g.node_count() <= 2);

        let winner = fixtures::fact1_winner(&a);
        let g = product(&a, &winner);
        for i in 0..g.node_count() {
            let (v, m) = g.node(i);
            if a.is_protagonist(v) {
                assert_eq!(g.successors(i).len(), 1);
                let step = g.successors(i)[0];
                assert_eq!(Some(step.arena_edge), winner.next_move(v, m));
                let (t, m2) = g.node(step.target);
                assert_eq!(t, a.edge(step.arena_edge).target);
                assert_eq!(m2, winner.memory().transition(&a, m, step.arena_edge));
            } else {
                assert_eq!(g.successors(i).len(), a.out_edges(v).len());
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let a = fixtures::fact1_arena();
        for kind in [MemoryKind::General, MemoryKind::Chromatic] {
            assert_eq!(enumerate_memories(&a, 1, kind).count(), 1);
        }
        let general = enumerate_memories(&a, 2, MemoryKind::General);
        assert_eq!(general.total(), Some(256));
        assert_eq!(general.count(), 256);

        let mut b = Arena::builder();
        let v = b.node("v", Owner::Protagonist).unwrap();
        for which in NamedMap::ALL {
            b.color(which.token(), ColorMap::named(which)).unwrap();
        }
        b.edge(v, 0, v).unwrap();
        let five = b.build();
        let chromatic = enumerate_memories(&five, 2, MemoryKind::Chromatic);
        assert_eq!(chromatic.total(), Some(1024));
        let all: Vec<_> = chromatic.collect();
        assert_eq!(all.len(), 1024);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 1024);
        assert!(all.iter().all(|m| m.initial() == 0 && m.states() == 2));
    }

    #[test]
    fn chromatic_structures_factor_through_colors() {
        let mut b = Arena::builder();
        let x = b.node("x", Owner::Antagonist).unwrap();
        let y = b.node("y", Owner::Protagonist).unwrap();
        let f0 = b.color("f0", ColorMap::named(NamedMap::F0)).unwrap();
        let h = b.color("h", ColorMap::named(NamedMap::H)).unwrap();
        b.edge(x, f0, y).unwrap();
        b.edge(x, f0, x).unwrap();
        b.edge(y, h, x).unwrap();
        b.edge(y, f0, y).unwrap();
        let a = b.build();
        for memory in enumerate_memories(&a, 2, MemoryKind::Chromatic) {
            for m in 0..2 {
                for e1 in 0..a.edge_count() {
                    for e2 in 0..a.edge_count() {
                        if a.edge(e1).color == a.edge(e2).color {
                            assert_eq!(memory.transition(&a, m, e1), memory.transition(&a, m, e2));
                        }
                    }
                }
            }
            assert_eq!(memory.to_general(&a).update(&a, 0, &[0, 2, 1, 3]), memory.update(&a, 0, &[0, 2, 1, 3]));
        }
    }

    #[test]
    fn move_tables_enumerate_every_choice() {
        let a = fixtures::fact1_arena();
        let memory = MemoryStructure::general(2, 4, vec![0; 8]).unwrap();
        let tables: Vec<_> = enumerate_moves(&a, &memory).collect();
        assert_eq!(tables.len(), 4);
        let square = a.node_id("square").unwrap();
        let choices: std::collections::HashSet<_> =
            tables.iter().map(|s| (s.next_move(square, 0), s.next_move(square, 1))).collect();
        assert_eq!(choices.len(), 4);
    }

    #[test]
    fn same_state_same_move() {
        let a = fixtures::fact1_arena();
        let winner = fixtures::fact1_winner(&a);
        let [u, v, f0, f1] = fixtures::fact1_edges();
        let circle = a.node_id("circle").unwrap();
        let p1 = Path { start: circle, edges: vec![v, f1, f1] };
        let p2 = Path { start: circle, edges: vec![v] };
        assert_eq!(winner.state_after(&a, &p1), winner.state_after(&a, &p2));
        assert_eq!(winner.move_after(&a, &p1), winner.move_after(&a, &p2));
        let p3 = Path { start: circle, edges: vec![u, f0] };
        assert_eq!(winner.move_after(&a, &p3), Some(f0));
    }

    #[test]
    fn strategy_files() {
        let a = Arena::parse(fixtures::FACT1_ARENA_TEXT).unwrap();
        let winner = parse_strategy(&a, include_str!("../fixtures/fact1-winner.strategy")).unwrap();
        assert_eq!(winner, fixtures::fact1_winner(&a));
        let always = parse_strategy(&a, include_str!("../fixtures/always-f0.strategy")).unwrap();
        assert_eq!(always, fixtures::fact1_positional(&a, 2));
        for s in [&winner, &always] {
            assert_eq!(&parse_strategy(&a, &serialize_strategy(&a, s)).unwrap(), s);
        }
    }

    #[test]
    fn strategy_file_errors() {
        let a = fixtures::fact1_arena();
        let missing = "strategy v1\nmemory kind=chromatic states=1\ntrans 0 u 0\nmove square 0 2\n";
        assert!(parse_strategy(&a, missing).unwrap_err().reason.contains("missing transition"));
        let foreign = "strategy v1\nmemory kind=chromatic states=1\ntrans 0 u 0\ntrans 0 v 0\ntrans 0 f0 0\n\
                       trans 0 f1 0\nmove square 0 0\n";
        assert!(parse_strategy(&a, foreign).unwrap_err().reason.contains("does not leave"));
        let err = parse_strategy(&a, "strategy v1\nmemory kind=general states=1\ntrans 0 9 0\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 9));
        assert!(parse_strategy(&a, "strategy v1\nmemory kind=odd states=1\n").is_err());
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(MemoryStructure::general(0, 3, vec![]), Err(StrategyError::NoStates));
        assert_eq!(MemoryStructure::general(2, 1, vec![0, 2]), Err(StrategyError::BadState(2)));
        let a = fixtures::fact1_arena();
        let mem = MemoryStructure::trivial(&a);
        assert!(matches!(
            FiniteMemoryStrategy::new(&a, mem.clone(), vec![None, None]),
            Err(StrategyError::MissingMove { .. })
        ));
        assert!(matches!(
            FiniteMemoryStrategy::new(&a, mem, vec![Some(0), Some(2)]),
            Err(StrategyError::AntagonistMove(_))
        ));
    }
}
