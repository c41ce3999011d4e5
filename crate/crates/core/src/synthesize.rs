//! Two states of general memory suffice.
//!
//! Given a finite-memory strategy `S₁` that wins from every node of `U`, this
//! module builds a strategy `S₂` with exactly two memory states that also
//! wins from every node of `U`.
//!
//! A play of `S₁` is *regular* if two of its prefixes (one of them proper)
//! end at the same node with the same ant position, and *irregular*
//! otherwise. Irregular plays are prefix-closed and, because `S₁` wins, there
//! are finitely many of them. For every node `v` reached by an irregular play
//! we collect the set `Ω_v` of ant positions those plays have at `v`, its (at
//! most two) maximal elements `M₀ᵛ, M₁ᵛ`, and a representative play for each.
//!
//! `S₂` keeps one bit `I`, maintaining `ant ⪯ M_Iᵛ` at the current node `v`:
//! it moves like `S₁` after the representative of `M_Iᵛ`, and after an edge
//! `e: u → v` it switches to a maximum of `Ω_v` above `col(e)(M_Iᵘ)`.
//!
//! The intermediate strategy that only ever replays irregular plays is never
//! built; irregular plays of `S₁` carry exactly the data it would provide.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::arena::{Arena, EdgeId, NodeId, Path};
use crate::omega::OmegaPoint;
use crate::strategy::{FiniteMemoryStrategy, MemoryStructure, StateId, StrategyError};
use crate::verify::verify_strategy;

/// Upper limit on the number of irregular plays kept in memory.
pub const DEFAULT_IRREGULAR_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("input strategy does not win from node `{0}`")]
    NotWinning(String),
    #[error("more than {0} irregular plays")]
    CapExceeded(usize),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// One node of the tree of irregular plays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrregularPlay {
    pub parent: Option<usize>,
    pub start: NodeId,
    pub last_edge: Option<EdgeId>,
    pub target: NodeId,
    pub ant: OmegaPoint,
    /// State of `S₁` after this play.
    pub memory: StateId,
    pub len: usize,
}

/// All irregular plays of a strategy from a set of start nodes, stored as a
/// forest with parent links, in breadth-first order.
#[derive(Debug, Clone, Default)]
pub struct IrregularPlaySet {
    plays: Vec<IrregularPlay>,
    regular_frontier: usize,
}

impl IrregularPlaySet {
    pub fn len(&self) -> usize {
        self.plays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plays.is_empty()
    }

    pub fn plays(&self) -> &[IrregularPlay] {
        &self.plays
    }

    /// Number of one-edge extensions that were regular (the tree boundary).
    pub fn regular_frontier(&self) -> usize {
        self.regular_frontier
    }

    pub fn path(&self, i: usize) -> Path {
        let mut edges = Vec::with_capacity(self.plays[i].len);
        let mut cur = Some(i);
        while let Some(c) = cur {
            if let Some(e) = self.plays[c].last_edge {
                edges.push(e);
            }
            cur = self.plays[c].parent;
        }
        edges.reverse();
        Path { start: self.plays[i].start, edges }
    }

    fn repeats_ancestor(&self, parent: usize, target: NodeId, ant: OmegaPoint) -> bool {
        let mut cur = Some(parent);
        while let Some(c) = cur {
            let play = &self.plays[c];
            if play.target == target && play.ant == ant {
                return true;
            }
            cur = play.parent;
        }
        false
    }
}

/// Enumerates every irregular play of `s1` starting in `start_nodes`.
///
/// Fails if `s1` does not win from one of the start nodes (the enumeration
/// would not terminate) or if more than `cap` plays are found.
pub fn enumerate_irregular(
    arena: &Arena,
    s1: &FiniteMemoryStrategy,
    start_nodes: &[NodeId],
    cap: usize,
) -> Result<IrregularPlaySet, SynthesisError> {
    let starts: BTreeSet<NodeId> = start_nodes.iter().copied().collect();
    for &u in &starts {
        if !verify_strategy(arena, s1, u).is_winning() {
            return Err(SynthesisError::NotWinning(arena.node(u).name.clone()));
        }
    }
    let memory = s1.memory();
    let mut set = IrregularPlaySet::default();
    let mut queue = VecDeque::new();
    for &u in &starts {
        set.plays.push(IrregularPlay {
            parent: None,
            start: u,
            last_edge: None,
            target: u,
            ant: OmegaPoint::ZERO,
            memory: memory.initial(),
            len: 0,
        });
        queue.push_back(set.plays.len() - 1);
    }
    if set.plays.len() > cap {
        return Err(SynthesisError::CapExceeded(cap));
    }
    while let Some(i) = queue.pop_front() {
        let play = set.plays[i].clone();
        let moves: Vec<EdgeId> = match s1.next_move(play.target, play.memory) {
            Some(e) => vec![e],
            None => arena.out_edges(play.target).to_vec(),
        };
        for e in moves {
            let target = arena.edge(e).target;
            let ant = arena.edge_map(e).apply(play.ant);
            if set.repeats_ancestor(i, target, ant) {
                set.regular_frontier += 1;
                continue;
            }
            if set.plays.len() == cap {
                return Err(SynthesisError::CapExceeded(cap));
            }
            set.plays.push(IrregularPlay {
                parent: Some(i),
                start: play.start,
                last_edge: Some(e),
                target,
                ant,
                memory: memory.transition(arena, play.memory, e),
                len: play.len + 1,
            });
            queue.push_back(set.plays.len() - 1);
        }
    }
    Ok(set)
}

/// Per-node data for a node reached by an irregular play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeTable {
    /// Ant positions of irregular plays ending here.
    pub omega: BTreeSet<OmegaPoint>,
    /// `[M₀, M₁]`; equal when `omega` has a single maximum.
    pub maxima: [OmegaPoint; 2],
    /// Index (into the irregular play set) of the representative for each
    /// maximum: shortest, then lexicographically least by edge indices.
    pub reps: [usize; 2],
}

impl NodeTable {
    /// The `b` with `p ⪯ M_b`, preferring 0, if `p ∈ Ω_v`.
    pub fn cover(&self, p: OmegaPoint) -> Option<StateId> {
        if !self.omega.contains(&p) {
            return None;
        }
        (0..2).find(|&b| p.leq(self.maxima[b]))
    }
}

/// `X` (the keys) together with `Ω_v`, maxima and representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisTables {
    pub nodes: BTreeMap<NodeId, NodeTable>,
}

impl SynthesisTables {
    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.contains_key(&v)
    }

    pub fn get(&self, v: NodeId) -> Option<&NodeTable> {
        self.nodes.get(&v)
    }
}

pub fn build_tables(irr: &IrregularPlaySet) -> SynthesisTables {
    let mut omegas: BTreeMap<NodeId, BTreeSet<OmegaPoint>> = BTreeMap::new();
    for play in irr.plays() {
        omegas.entry(play.target).or_default().insert(play.ant);
    }
    let mut nodes = BTreeMap::new();
    for (v, omega) in omegas {
        let top = omega.iter().map(|p| p.layer).max().expect("non-empty");
        let at_top: Vec<OmegaPoint> = omega.iter().copied().filter(|p| p.layer == top).collect();
        let maxima = match at_top.as_slice() {
            [only] => [*only, *only],
            [zero, one] => [*zero, *one],
            _ => unreachable!("a layer has two points"),
        };
        let reps = maxima.map(|m| {
            irr.plays()
                .iter()
                .enumerate()
                .filter(|(_, p)| p.target == v && p.ant == m)
                .map(|(i, p)| (p.len, irr.path(i).edges, i))
                .min()
                .map(|(_, _, i)| i)
                .expect("maximum is attained")
        });
        nodes.insert(v, NodeTable { omega, maxima, reps });
    }
    SynthesisTables { nodes }
}

/// Result of the two-state construction.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub strategy: FiniteMemoryStrategy,
    pub tables: SynthesisTables,
    pub irregular: IrregularPlaySet,
    pub start_nodes: Vec<NodeId>,
}

impl Synthesis {
    /// `ant ⪯ M_Iᵛ` after every prefix of `path`, where `I` is the state of
    /// the synthesized strategy and `v` the current node.
    pub fn invariant_holds(&self, arena: &Arena, path: &Path) -> bool {
        let memory = self.strategy.memory();
        let mut state = memory.initial();
        let mut ant = OmegaPoint::ZERO;
        let check = |v: NodeId, state: StateId, ant: OmegaPoint| {
            self.tables.get(v).is_some_and(|t| ant.leq(t.maxima[state]))
        };
        if !check(path.start, state, ant) {
            return false;
        }
        for &e in &path.edges {
            state = memory.transition(arena, state, e);
            ant = arena.edge_map(e).apply(ant);
            if !check(arena.edge(e).target, state, ant) {
                return false;
            }
        }
        true
    }

    /// One JSON object per node of `X`.
    pub fn report_lines(&self, arena: &Arena) -> Vec<String> {
        self.tables
            .nodes
            .iter()
            .map(|(&v, t)| {
                serde_json::json!({
                    "node": arena.node(v).name,
                    "omega": t.omega.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "M0": t.maxima[0].to_string(),
                    "M1": t.maxima[1].to_string(),
                    "rep0": self.irregular.path(t.reps[0]).edges,
                    "rep1": self.irregular.path(t.reps[1]).edges,
                })
                .to_string()
            })
            .collect()
    }
}

/// Runs the whole construction with an explicit cap on irregular plays.
pub fn synthesize(
    arena: &Arena,
    s1: &FiniteMemoryStrategy,
    start_nodes: &[NodeId],
    cap: usize,
) -> Result<Synthesis, SynthesisError> {
    let irregular = enumerate_irregular(arena, s1, start_nodes, cap)?;
    let tables = build_tables(&irregular);

    let mut table = vec![0; 2 * arena.edge_count()];
    for i in 0..2 {
        for e in 0..arena.edge_count() {
            let edge = arena.edge(e);
            let (Some(from), Some(to)) = (tables.get(edge.source), tables.get(edge.target)) else {
                continue;
            };
            let moved = arena.edge_map(e).apply(from.maxima[i]);
            table[i * arena.edge_count() + e] = to.cover(moved).unwrap_or(0);
        }
    }
    let memory = MemoryStructure::general(2, arena.edge_count(), table)?;
    let strategy = FiniteMemoryStrategy::from_fn(arena, memory, |v, i| match tables.get(v) {
        Some(t) => {
            let rep = &irregular.plays()[t.reps[i]];
            s1.next_move(v, rep.memory).expect("protagonist node")
        }
        None => arena.out_edges(v)[0],
    })?;
    let start_nodes = start_nodes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    Ok(Synthesis { strategy, tables, irregular, start_nodes })
}

/// The two-state strategy built from `s1`, winning from every node of
/// `start_nodes`.
pub fn build_two_state(
    arena: &Arena,
    s1: &FiniteMemoryStrategy,
    start_nodes: &[NodeId],
) -> Result<FiniteMemoryStrategy, SynthesisError> {
    synthesize(arena, s1, start_nodes, DEFAULT_IRREGULAR_CAP).map(|s| s.strategy)
}
