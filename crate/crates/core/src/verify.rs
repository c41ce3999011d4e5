//! Deciding whether a finite-memory strategy wins the Rope Ladder condition.
//!
//! A play is winning iff the ant's layer stays bounded. Against a fixed
//! finite-memory strategy the plays are the paths of the product graph, and
//! the ant adds one more coordinate, so the question is whether the set of
//! configurations `(node, memory state, ant)` reachable from
//! `(start, m_init, (0,0))` is finite.
//!
//! # Cutoff
//!
//! Let `Θ` be the largest threshold in the palette, `s` the largest layer
//! increase of a single color, and `K = |V|·|M|·2`. Set
//! `B = Θ + s·(K + 1) + 1`.
//!
//! If no reachable configuration has layer `≥ B`, the reachable set is finite
//! and every play is bounded: the strategy wins. Conversely, take a path whose
//! final layer is `≥ B`, and let `j` be the last position with layer `≤ Θ`.
//! From `j + 1` on every layer exceeds `Θ`, where every color acts as
//! `(n, b) ↦ (n + d, β(b))`. The layer at `j + 1` is at most `Θ + s`, so it
//! must climb by more than `s·K`, each step by at most `s`; hence there are
//! more than `K` record positions (strict new maxima). Two of them share
//! `(node, memory state, bit)`. The segment between them starts and ends in
//! the same node and memory state, raises the layer by some `Δ > 0`, and
//! never leaves the affine regime; replaying it from the higher copy produces
//! the same moves and bits shifted up by `Δ`. Repeating it forever gives an
//! unbounded play, so the strategy loses. The two record positions are
//! reported as the pump of the losing certificate.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::arena::{Arena, EdgeId, NodeId, Path};
use crate::omega::OmegaPoint;
use crate::strategy::{enumerate_memories, enumerate_moves, product, FiniteMemoryStrategy, MemoryKind, StateId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Winning,
    Losing,
}

/// `path.edges[from..to]` can be repeated forever, raising the layer each time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pump {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Winning { configurations: usize, max_layer: u64 },
    Losing { path: Path, pump: Option<Pump> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub start: NodeId,
    pub outcome: Outcome,
    pub bound: u64,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn is_winning(&self) -> bool {
        self.outcome == Outcome::Winning
    }

    /// JSON form used by the command line `--certificate` output.
    pub fn to_json(&self, arena: &Arena) -> serde_json::Value {
        let mut value = serde_json::json!({
            "start": arena.node(self.start).name,
            "outcome": self.outcome,
            "bound": self.bound,
        });
        match &self.certificate {
            Certificate::Winning { configurations, max_layer } => {
                value["configurations"] = (*configurations).into();
                value["max_layer"] = (*max_layer).into();
            }
            Certificate::Losing { path, pump } => {
                value["path"] = serde_json::json!(path.edges);
                value["path_colors"] = serde_json::json!(path
                    .edges
                    .iter()
                    .map(|&e| arena.color_name_of(e))
                    .collect::<Vec<_>>());
                value["final_ant"] = arena.ant_along(OmegaPoint::ZERO, &path.edges).to_string().into();
                value["pump"] = serde_json::json!(pump);
            }
        }
        value
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("search budget of {budget} strategies exceeded")]
pub struct BudgetExceeded {
    pub budget: u64,
}

fn palette_threshold(arena: &Arena) -> u64 {
    arena.colors().iter().map(|c| c.map.threshold()).max().unwrap_or(0)
}

/// `B = Θ + s·(K+1) + 1` with `K = |V|·|M|·2`.
pub fn cutoff_bound(arena: &Arena, strategy: &FiniteMemoryStrategy) -> u64 {
    let theta = palette_threshold(arena);
    let s_up = arena.colors().iter().map(|c| c.map.max_increase()).max().unwrap_or(0);
    let k = (arena.node_count() * strategy.states() * 2) as u64;
    theta + s_up * (k + 1) + 1
}

/// Default step limit for [`crate::strategy::play`]: `10·B`.
pub fn default_step_limit(arena: &Arena, strategy: &FiniteMemoryStrategy) -> usize {
    10 * cutoff_bound(arena, strategy) as usize
}

/// Breadth-first exploration of `(product node, ant)` configurations from
/// `(start, m_init, (0,0))`, cut off at layer `B`.
pub fn verify_strategy(arena: &Arena, strategy: &FiniteMemoryStrategy, start: NodeId) -> Verdict {
    let graph = product(arena, strategy);
    let bound = cutoff_bound(arena, strategy);
    let root = graph
        .index_of(start, strategy.memory().initial())
        .expect("product contains every (v, m_init)");

    let mut configs: Vec<(usize, OmegaPoint)> = vec![(root, OmegaPoint::ZERO)];
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None];
    let mut seen: HashSet<(usize, OmegaPoint)> = HashSet::from([(root, OmegaPoint::ZERO)]);
    let mut queue = VecDeque::from([0usize]);
    let mut max_layer = 0;

    while let Some(ci) = queue.pop_front() {
        let (pi, point) = configs[ci];
        for step in graph.successors(pi) {
            let next = arena.edge_map(step.arena_edge).apply(point);
            if next.layer >= bound {
                let mut edges = vec![step.arena_edge];
                let mut cur = ci;
                while let Some((prev, e)) = parent[cur] {
                    edges.push(e);
                    cur = prev;
                }
                edges.reverse();
                let path = Path { start, edges };
                let pump = find_pump(arena, strategy, &path);
                return Verdict { start, outcome: Outcome::Losing, bound, certificate: Certificate::Losing { path, pump } };
            }
            if seen.insert((step.target, next)) {
                max_layer = max_layer.max(next.layer);
                configs.push((step.target, next));
                parent.push(Some((ci, step.arena_edge)));
                queue.push_back(configs.len() - 1);
            }
        }
    }
    Verdict {
        start,
        outcome: Outcome::Winning,
        bound,
        certificate: Certificate::Winning { configurations: configs.len(), max_layer },
    }
}

/// `(node, memory state, ant)` after every prefix of `path`, `path.len() + 1`
/// entries.
fn trace(arena: &Arena, strategy: &FiniteMemoryStrategy, path: &Path) -> Vec<(NodeId, StateId, OmegaPoint)> {
    let mut out = Vec::with_capacity(path.len() + 1);
    let mut cur = (path.start, strategy.memory().initial(), OmegaPoint::ZERO);
    out.push(cur);
    for &e in &path.edges {
        cur = (
            arena.edge(e).target,
            strategy.memory().transition(arena, cur.1, e),
            arena.edge_map(e).apply(cur.2),
        );
        out.push(cur);
    }
    out
}

/// Two record positions above the threshold regime with equal node, memory
/// state and bit.
fn find_pump(arena: &Arena, strategy: &FiniteMemoryStrategy, path: &Path) -> Option<Pump> {
    let theta = palette_threshold(arena);
    let configs = trace(arena, strategy, path);
    let last_low = configs.iter().rposition(|c| c.2.layer <= theta)?;
    let mut best: Option<u64> = None;
    let mut records: HashMap<(NodeId, StateId, bool), usize> = HashMap::new();
    for (i, &(v, m, p)) in configs.iter().enumerate().skip(last_low + 1) {
        if best.is_some_and(|b| p.layer <= b) {
            continue;
        }
        best = Some(p.layer);
        if let Some(&from) = records.get(&(v, m, p.bit)) {
            return Some(Pump { from, to: i });
        }
        records.insert((v, m, p.bit), i);
    }
    None
}

/// Replays a certificate against the strategy. For a losing verdict this
/// checks consistency of the path, the final layer against the bound, and
/// that the pump really repeats (two extra iterations are simulated).
pub fn check_certificate(arena: &Arena, strategy: &FiniteMemoryStrategy, verdict: &Verdict) -> bool {
    match &verdict.certificate {
        Certificate::Winning { max_layer, .. } => *max_layer < verdict.bound,
        Certificate::Losing { path, pump } => {
            if path.start != verdict.start
                || arena.path(path.start, path.edges.clone()).is_err()
                || !strategy.is_consistent(arena, path)
            {
                return false;
            }
            let configs = trace(arena, strategy, path);
            if configs.last().map(|c| c.2.layer) < Some(verdict.bound) {
                return false;
            }
            let Some(Pump { from, to }) = *pump else { return true };
            if from >= to || to >= configs.len() {
                return false;
            }
            let (a, b) = (configs[from], configs[to]);
            if (a.0, a.1, a.2.bit) != (b.0, b.1, b.2.bit) || b.2.layer <= a.2.layer {
                return false;
            }
            let segment = &path.edges[from..to];
            let mut pumped = path.edges[..to].to_vec();
            pumped.extend_from_slice(segment);
            pumped.extend_from_slice(segment);
            let pumped = Path { start: path.start, edges: pumped };
            if !strategy.is_consistent(arena, &pumped) {
                return false;
            }
            let replay = trace(arena, strategy, &pumped);
            let delta = b.2.layer - a.2.layer;
            let c1 = replay[to + segment.len()];
            let c2 = replay[to + 2 * segment.len()];
            (c1.0, c1.1, c1.2) == (b.0, b.1, OmegaPoint::new(b.2.layer + delta, b.2.bit))
                && (c2.0, c2.1, c2.2) == (b.0, b.1, OmegaPoint::new(b.2.layer + 2 * delta, b.2.bit))
        }
    }
}

/// Nodes from which `strategy` wins, in increasing index order.
pub fn winning_set(arena: &Arena, strategy: &FiniteMemoryStrategy) -> Vec<NodeId> {
    (0..arena.node_count())
        .filter(|&v| verify_strategy(arena, strategy, v).is_winning())
        .collect()
}

/// Largest layer reached by any play of length at most `depth`, by exhaustive
/// forward exploration without any cutoff. Independent of the product graph
/// and of [`verify_strategy`].
///
/// Two plays of equal length ending at the same node and memory state have
/// the same continuations, and colors are monotone, so a play whose ant is
/// `⪯` the other's never climbs higher. Each step therefore keeps only the
/// `⪯`-maximal ant positions per `(node, state)`: at most two, on one layer.
pub fn brute_force_max_layer(arena: &Arena, strategy: &FiniteMemoryStrategy, start: NodeId, depth: usize) -> u64 {
    let memory = strategy.memory();
    let mut frontier: HashMap<(NodeId, StateId), Vec<OmegaPoint>> =
        HashMap::from([((start, memory.initial()), vec![OmegaPoint::ZERO])]);
    let mut max_layer = 0;
    for _ in 0..depth {
        let mut next: HashMap<(NodeId, StateId), Vec<OmegaPoint>> = HashMap::new();
        for (&(v, m), points) in &frontier {
            let moves: Vec<EdgeId> = match strategy.next_move(v, m) {
                Some(e) => vec![e],
                None => arena.out_edges(v).to_vec(),
            };
            for e in moves {
                let key = (arena.edge(e).target, memory.transition(arena, m, e));
                let maxima = next.entry(key).or_default();
                for &p in points {
                    let q = arena.edge_map(e).apply(p);
                    max_layer = max_layer.max(q.layer);
                    if maxima.iter().any(|&r| q.leq(r)) {
                        continue;
                    }
                    maxima.retain(|&r| !r.leq(q));
                    maxima.push(q);
                }
            }
        }
        frontier = next;
    }
    max_layer
}

/// First strategy (canonical order) with at most `k` states of the given
/// memory kind that wins from `start`.
pub fn search_winning_strategy(arena: &Arena, start: NodeId, k: usize, kind: MemoryKind) -> Option<FiniteMemoryStrategy> {
    search_winning_strategy_within(arena, start, k, kind, u64::MAX).expect("unbounded budget")
}

/// Like [`search_winning_strategy`], but gives up once `budget` candidate
/// strategies have been checked without success.
pub fn search_winning_strategy_within(
    arena: &Arena,
    start: NodeId,
    k: usize,
    kind: MemoryKind,
    budget: u64,
) -> Result<Option<FiniteMemoryStrategy>, BudgetExceeded> {
    let mut checked = 0u64;
    for memory in enumerate_memories(arena, k, kind) {
        for candidate in enumerate_moves(arena, &memory) {
            if checked == budget {
                return Err(BudgetExceeded { budget });
            }
            checked += 1;
            if verify_strategy(arena, &candidate, start).is_winning() {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}
