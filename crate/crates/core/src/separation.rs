//! Chromatic memory cannot match two states of general memory.
//!
//! For each memory bound `Q` this module builds:
//!
//! * two different equal-length binary words `x, y` that no DFA with at most
//!   `Q` states tells apart by end state (`Q`-indistinguishable);
//! * bit sequences `I⁰, I¹` such that `⊕ₙ I^{xₙ}ₙ ≠ ⊕ₙ I^{yₙ}ₙ`;
//! * a gadget arena where Antagonist spells `x` or `y` with the incremental
//!   colors `p⁰, p¹`, after which Protagonist must pick `f₀` or `f₁`
//!   according to the parity above.
//!
//! Two states of general memory win the gadget. A chromatic memory with at
//! most `Q` states reaches the same state on both color words, so it answers
//! both branches identically and loses one of them.
//!
//! DFAs are canonical transition tables over `{0, 1}` with initial state 0:
//! `Q^{2Q}` of them, `δ(q, a) = table[2q + a]`, enumerated first digit
//! fastest. Padding with unreachable states covers automata with fewer states.

use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{Arena, EdgeId, NodeId, Owner};
use crate::omega::{ColorMap, NamedMap, OmegaPoint};
use crate::strategy::{
    enumerate_memories, enumerate_moves, FiniteMemoryStrategy, MemoryKind, MemoryStructure, StrategyError,
};
use crate::verify::verify_strategy;

/// Longest word length tried by [`find_collision_pair`] unless told otherwise.
pub const DEFAULT_MAX_LEN: usize = 24;

/// Largest number of candidate strategies [`refute_chromatic`] will check
/// unless told otherwise.
pub const DEFAULT_SWEEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("memory bound must be at least 1")]
    ZeroBound,
    #[error("no {q}-indistinguishable pair of length at most {max_len}")]
    NoCollision { q: usize, max_len: usize },
    #[error("sweep needs {needed} candidate strategies, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("chromatic strategy with {states} states (structure #{structure}) wins the gadget")]
    ChromaticWinner { states: usize, structure: u64 },
    #[error("no witness for Q = {0}")]
    MissingWitness(usize),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// A finite binary word, written as a string of `0`/`1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BitWord(pub Vec<bool>);

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn concat(&self, other: &BitWord) -> BitWord {
        BitWord([self.0.as_slice(), other.0.as_slice()].concat())
    }

    /// The `len` low bits of `code`, most significant first.
    fn from_code(code: u64, len: usize) -> Self {
        BitWord((0..len).rev().map(|i| code >> i & 1 == 1).collect())
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("`{other}` is not a bit")),
            })
            .collect::<Result<_, _>>()
            .map(BitWord)
    }
}

impl From<BitWord> for String {
    fn from(w: BitWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for BitWord {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// A complete DFA over `{0, 1}` with initial state 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DfaTable {
    states: usize,
    delta: Vec<u8>,
}

impl DfaTable {
    pub fn states(&self) -> usize {
        self.states
    }

    pub fn step(&self, q: usize, bit: bool) -> usize {
        self.delta[2 * q + bit as usize] as usize
    }

    pub fn run(&self, word: &[bool]) -> usize {
        word.iter().fold(0, |q, &b| self.step(q, b))
    }
}

/// All `Q^{2Q}` canonical tables.
pub fn enum_dfas(q: usize) -> Vec<DfaTable> {
    assert!((1..=8).contains(&q), "DFA size out of range");
    let width = 2 * q;
    let total = q.pow(width as u32);
    (0..total)
        .map(|mut index| {
            let delta = (0..width)
                .map(|_| {
                    let d = index % q;
                    index /= q;
                    d as u8
                })
                .collect();
            DfaTable { states: q, delta }
        })
        .collect()
}

/// End state of `word` on every canonical table with `q` states.
pub fn signature(word: &[bool], q: usize) -> Vec<u8> {
    enum_dfas(q).iter().map(|d| d.run(word) as u8).collect()
}

pub fn q_indistinguishable(x: &[bool], y: &[bool], q: usize) -> bool {
    enum_dfas(q).iter().all(|d| d.run(x) == d.run(y))
}

/// Two different words of the same, minimal length that are
/// `Q`-indistinguishable: at the first length with a collision, the earliest
/// word (lexicographically, `0 < 1`) whose signature repeats, paired with the
/// earlier word it repeats.
pub fn find_collision_pair(q: usize, max_len: usize) -> Result<(BitWord, BitWord), SeparationError> {
    if q == 0 {
        return Err(SeparationError::ZeroBound);
    }
    let dfas = enum_dfas(q);
    let flat: Vec<[u8; 2]> = dfas
        .iter()
        .flat_map(|d| (0..q).map(move |s| [d.step(s, false) as u8, d.step(s, true) as u8]))
        .collect();
    for len in 1..=max_len.min(62) {
        if let Some((a, b)) = collision_at(&flat, dfas.len(), q, len) {
            let (a, b) = (BitWord::from_code(a, len), BitWord::from_code(b, len));
            debug_assert!(q_indistinguishable(&a.0, &b.0, q));
            return Ok((a, b));
        }
    }
    Err(SeparationError::NoCollision { q, max_len })
}

/// Depth-first walk over all words of length `len` in lexicographic order,
/// carrying the state vector of every table.
fn collision_at(flat: &[[u8; 2]], n: usize, q: usize, len: usize) -> Option<(u64, u64)> {
    let mut seen: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut layers = vec![vec![0u8; n]; len + 1];
    // `code` holds the current prefix; `depth` its length.
    let mut code = 0u64;
    let mut depth = 0usize;
    let mut next_bit = vec![0u8; len + 1];
    loop {
        if depth == len {
            let sig = &layers[len];
            let mut h = DefaultHasher::new();
            sig.hash(&mut h);
            let bucket = seen.entry(h.finish()).or_default();
            for &earlier in bucket.iter() {
                if same_signature(flat, n, q, earlier, code, len) {
                    return Some((earlier, code));
                }
            }
            bucket.push(code);
        } else if next_bit[depth] < 2 {
            let bit = next_bit[depth];
            next_bit[depth] += 1;
            let (lower, upper) = layers.split_at_mut(depth + 1);
            let (from, to) = (&lower[depth], &mut upper[0]);
            for i in 0..n {
                to[i] = flat[i * q + from[i] as usize][bit as usize];
            }
            code = code << 1 | bit as u64;
            depth += 1;
            next_bit[depth] = 0;
            continue;
        }
        // Backtrack.
        if depth == 0 {
            return None;
        }
        if depth == len || next_bit[depth] == 2 {
            depth -= 1;
            code >>= 1;
        }
    }
}

fn same_signature(flat: &[[u8; 2]], n: usize, q: usize, a: u64, b: u64, len: usize) -> bool {
    let run = |i: usize, code: u64| {
        (0..len).rev().fold(0u8, |s, k| flat[i * q + s as usize][(code >> k & 1) as usize])
    };
    (0..n).all(|i| run(i, a) == run(i, b))
}

/// Everything needed to build the gadget for one memory bound `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndistinguishabilityWitness {
    pub q: usize,
    pub t: usize,
    pub x: BitWord,
    pub y: BitWord,
    /// First index where `x` and `y` differ.
    pub m: usize,
    /// `l₁, …, l_Q`.
    pub block_lengths: Vec<usize>,
}

impl IndistinguishabilityWitness {
    /// Start of this witness's own block.
    pub fn offset(&self) -> usize {
        self.block_lengths[..self.block_lengths.len() - 1].iter().sum()
    }
}

/// Finite prefixes of `I⁰, I¹` (both continue with zeros) and one witness
/// per `Q = 1..=Q_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequencePair {
    #[serde(rename = "I0")]
    pub i0: BitWord,
    #[serde(rename = "I1")]
    pub i1: BitWord,
    pub witnesses: Vec<IndistinguishabilityWitness>,
}

impl SequencePair {
    pub fn bit(&self, which: bool, n: usize) -> bool {
        let seq = if which { &self.i1 } else { &self.i0 };
        seq.0.get(n).copied().unwrap_or(false)
    }

    /// `I^{w₀}₀ ⊕ … ⊕ I^{w_{t−1}}_{t−1}`.
    pub fn xor_sum(&self, word: &BitWord) -> bool {
        word.0.iter().enumerate().fold(false, |acc, (n, &w)| acc ^ self.bit(w, n))
    }

    pub fn witness(&self, q: usize) -> Result<&IndistinguishabilityWitness, SeparationError> {
        self.witnesses.iter().find(|w| w.q == q).ok_or(SeparationError::MissingWitness(q))
    }

    /// Both conclusions for one witness: indistinguishability and unequal
    /// parities.
    pub fn witness_holds(&self, w: &IndistinguishabilityWitness) -> bool {
        w.x != w.y
            && w.x.len() == w.t
            && w.y.len() == w.t
            && q_indistinguishable(&w.x.0, &w.y.0, w.q)
            && self.xor_sum(&w.x) != self.xor_sum(&w.y)
    }
}

/// Consecutive blocks `B₁, B₂, …`; block `Q` holds a minimal
/// `Q`-indistinguishable pair padded on the left with zeros.
pub fn build_sequences(q_max: usize, max_len: usize) -> Result<SequencePair, SeparationError> {
    if q_max == 0 {
        return Err(SeparationError::ZeroBound);
    }
    let mut i0 = Vec::new();
    let mut i1 = Vec::new();
    let mut block_lengths = Vec::new();
    let mut witnesses = Vec::new();
    for q in 1..=q_max {
        let (a, b) = find_collision_pair(q, max_len)?;
        let offset = i0.len();
        block_lengths.push(a.len());
        let pad = BitWord::zeros(offset);
        let (x, y) = (pad.concat(&a), pad.concat(&b));
        let m = (0..x.len()).find(|&n| x.0[n] != y.0[n]).expect("words differ");
        i0.extend(std::iter::repeat_n(false, a.len()));
        i1.extend((offset..offset + a.len()).map(|n| n == m));
        witnesses.push(IndistinguishabilityWitness { q, t: x.len(), x, y, m, block_lengths: block_lengths.clone() });
    }
    Ok(SequencePair { i0: BitWord(i0), i1: BitWord(i1), witnesses })
}

/// The lower-bound arena for one witness.
///
/// Antagonist node `u` has two branches of `t` edges, colored by `x` and
/// `y` through `p⁰, p¹`, meeting at `v`; `t − 1` edges colored `h` lead on
/// to Protagonist node `w`, which loops on `f₀` and `f₁`. For `t = 1`,
/// `v = w`.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub arena: Arena,
    pub t: usize,
    pub u: NodeId,
    pub v: NodeId,
    pub w: NodeId,
    pub top: Vec<EdgeId>,
    pub bottom: Vec<EdgeId>,
    pub chain: Vec<EdgeId>,
    /// `[f₀-loop, f₁-loop]` at `w`.
    pub loops: [EdgeId; 2],
    /// Layer of each node along any play from `u`.
    layers: Vec<u64>,
}

pub fn gadget(witness: &IndistinguishabilityWitness, seq: &SequencePair) -> Gadget {
    let t = witness.t;
    assert!(t >= 1 && seq.i0.len() >= t, "sequences too short for witness");
    let mut b = Arena::builder();
    let f0 = b.color("f0", ColorMap::named(NamedMap::F0)).unwrap();
    let f1 = b.color("f1", ColorMap::named(NamedMap::F1)).unwrap();
    let h = b.color("h", ColorMap::named(NamedMap::H)).unwrap();
    let p = [
        b.color("p0", ColorMap::incremental(seq.i0.bits(), false)).unwrap(),
        b.color("p1", ColorMap::incremental(seq.i1.bits(), false)).unwrap(),
    ];
    let mut layers = Vec::new();
    let mut node = |b: &mut crate::arena::ArenaBuilder, name: String, owner, layer: u64| {
        layers.push(layer);
        b.node(name, owner).unwrap()
    };
    let u = node(&mut b, "u".into(), Owner::Antagonist, 0);
    let (v, w) = if t == 1 {
        let w = node(&mut b, "w".into(), Owner::Protagonist, 1);
        (w, w)
    } else {
        let v = node(&mut b, "v".into(), Owner::Antagonist, t as u64);
        let w = node(&mut b, "w".into(), Owner::Protagonist, 1);
        (v, w)
    };
    let mut branch = |b: &mut crate::arena::ArenaBuilder, prefix: &str, word: &BitWord| {
        let mut from = u;
        let mut edges = Vec::with_capacity(t);
        for (i, &bit) in word.bits().iter().enumerate() {
            let to = if i + 1 == t { v } else { node(b, format!("{prefix}{}", i + 1), Owner::Antagonist, i as u64 + 1) };
            edges.push(b.edge(from, p[bit as usize], to).unwrap());
            from = to;
        }
        edges
    };
    let top = branch(&mut b, "a", &witness.x);
    let bottom = branch(&mut b, "b", &witness.y);
    let mut chain = Vec::with_capacity(t - 1);
    let mut from = v;
    for j in 1..t {
        let to = if j + 1 == t { w } else { node(&mut b, format!("c{j}"), Owner::Antagonist, (t - j) as u64) };
        chain.push(b.edge(from, h, to).unwrap());
        from = to;
    }
    let loops = [b.edge(w, f0, w).unwrap(), b.edge(w, f1, w).unwrap()];
    Gadget { arena: b.build(), t, u, v, w, top, bottom, chain, loops, layers }
}

impl Gadget {
    /// Layer of the ant at `v` along any play from `u`.
    pub fn layer(&self, node: NodeId) -> u64 {
        self.layers[node]
    }

    /// Ant positions at `v` and at `w` along the top (`false`) or bottom
    /// (`true`) branch.
    pub fn branch_ant(&self, bottom: bool) -> (OmegaPoint, OmegaPoint) {
        let edges = if bottom { &self.bottom } else { &self.top };
        let at_v = self.arena.ant_along(OmegaPoint::ZERO, edges);
        (at_v, self.arena.ant_along(at_v, &self.chain))
    }

    /// Color words from `u` to `w` along each branch.
    pub fn branch_colors(&self, bottom: bool) -> Vec<EdgeId> {
        let edges = if bottom { &self.bottom } else { &self.top };
        edges.iter().chain(&self.chain).copied().collect()
    }
}

/// Two states of general memory tracking the ant's bit; `w` plays `f₀` in
/// state 0 and `f₁` in state 1.
pub fn gadget_winning_strategy(g: &Gadget) -> FiniteMemoryStrategy {
    let a = &g.arena;
    let e_count = a.edge_count();
    let mut table = vec![0; 2 * e_count];
    for bit in 0..2 {
        for e in 0..e_count {
            let before = OmegaPoint::new(g.layer(a.edge(e).source), bit == 1);
            table[bit * e_count + e] = a.edge_map(e).apply(before).bit as usize;
        }
    }
    let memory = MemoryStructure::general(2, e_count, table).expect("well-formed table");
    FiniteMemoryStrategy::from_fn(a, memory, |_, m| g.loops[m]).expect("only w is Protagonist")
}

/// Outcome of the exhaustive sweep for one memory size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepLevel {
    pub states: usize,
    pub structures: u64,
    pub strategies: u64,
    pub losing: u64,
    /// Structures ending in the same state on both branch color words.
    pub branch_states_equal: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    pub q: usize,
    pub levels: Vec<SweepLevel>,
}

impl RefutationReport {
    pub fn holds(&self) -> bool {
        self.levels.iter().all(|l| l.losing == l.strategies && l.branch_states_equal == l.structures)
    }

    pub fn strategies(&self) -> u64 {
        self.levels.iter().map(|l| l.strategies).sum()
    }
}

/// Number of candidates [`refute_chromatic`] checks, or `None` on overflow.
pub fn sweep_size(arena: &Arena, q: usize) -> Option<u64> {
    (1..=q).try_fold(0u64, |acc, k| {
        let structures = enumerate_memories(arena, k, MemoryKind::Chromatic).total()?;
        let moves = enumerate_moves(arena, &MemoryStructure::trivial(arena)).total()?.checked_pow(k as u32)?;
        acc.checked_add(structures.checked_mul(moves)?)
    })
}

/// Checks every chromatic strategy with at most `q` states on the gadget;
/// each must lose from `u`.
pub fn refute_chromatic(g: &Gadget, q: usize, budget: u64) -> Result<RefutationReport, SeparationError> {
    if q == 0 {
        return Err(SeparationError::ZeroBound);
    }
    let a = &g.arena;
    let needed = sweep_size(a, q).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(SeparationError::BudgetExceeded { needed, budget });
    }
    let (top, bottom) = (g.branch_colors(false), g.branch_colors(true));
    let mut levels = Vec::with_capacity(q);
    for k in 1..=q {
        let mut level = SweepLevel { states: k, structures: 0, strategies: 0, losing: 0, branch_states_equal: 0 };
        for (index, memory) in enumerate_memories(a, k, MemoryKind::Chromatic).enumerate() {
            level.structures += 1;
            let init = memory.initial();
            if memory.update(a, init, &top) == memory.update(a, init, &bottom) {
                level.branch_states_equal += 1;
            }
            for candidate in enumerate_moves(a, &memory) {
                level.strategies += 1;
                if verify_strategy(a, &candidate, g.u).is_winning() {
                    return Err(SeparationError::ChromaticWinner { states: k, structure: index as u64 });
                }
                level.losing += 1;
            }
        }
        levels.push(level);
    }
    Ok(RefutationReport { q, levels })
}

/// The argument without enumerating memories: `x, y` are
/// `Q`-indistinguishable, so every chromatic memory with `Q` states ends in
/// one state on both branches, while the ant's bit at `w` differs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordEvidence {
    pub q: usize,
    pub dfas: u64,
    pub indistinguishable: bool,
    pub top_ant_at_w: OmegaPoint,
    pub bottom_ant_at_w: OmegaPoint,
}

impl WordEvidence {
    pub fn holds(&self) -> bool {
        self.indistinguishable && self.top_ant_at_w.layer == 1 && self.top_ant_at_w.bit != self.bottom_ant_at_w.bit
            && self.bottom_ant_at_w.layer == 1
    }
}

pub fn word_evidence(g: &Gadget, witness: &IndistinguishabilityWitness) -> WordEvidence {
    WordEvidence {
        q: witness.q,
        dfas: (witness.q as u64).pow(2 * witness.q as u32),
        indistinguishable: q_indistinguishable(&witness.x.0, &witness.y.0, witness.q),
        top_ant_at_w: g.branch_ant(false).1,
        bottom_ant_at_w: g.branch_ant(true).1,
    }
}

/// Full pipeline for one `Q`.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub q: usize,
    pub witness: IndistinguishabilityWitness,
    pub winner_states: usize,
    pub winner_wins: bool,
    pub evidence: WordEvidence,
    /// `None` when the exhaustive sweep did not fit in the budget.
    pub refutation: Option<RefutationReport>,
}

impl SeparationReport {
    pub fn holds(&self) -> bool {
        self.winner_wins && self.evidence.holds() && self.refutation.as_ref().is_some_and(|r| r.holds())
    }
}

pub fn separation(q: usize, max_len: usize, budget: u64) -> Result<SeparationReport, SeparationError> {
    let seq = build_sequences(q, max_len)?;
    let witness = seq.witness(q)?.clone();
    let g = gadget(&witness, &seq);
    let winner = gadget_winning_strategy(&g);
    let winner_wins = verify_strategy(&g.arena, &winner, g.u).is_winning();
    let evidence = word_evidence(&g, &witness);
    let refutation = match refute_chromatic(&g, q, budget) {
        Ok(r) => Some(r),
        Err(SeparationError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SeparationReport { q, witness, winner_states: winner.states(), winner_wins, evidence, refutation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::pt;

    fn word(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn dfa_counts() {
        assert_eq!(enum_dfas(1).len(), 1);
        assert_eq!(enum_dfas(2).len(), 16);
        assert_eq!(enum_dfas(3).len(), 729);
        assert!(enum_dfas(2).iter().all(|d| d.states() == 2));
    }

    #[test]
    fn indistinguishability_examples() {
        assert!(q_indistinguishable(&word("0110").0, &word("1").0, 1));
        assert!(!q_indistinguishable(&word("0").0, &word("1").0, 2));
        assert_eq!(signature(&word("0").0, 2).len(), 16);
    }

    #[test]
    fn collision_q1() {
        assert_eq!(find_collision_pair(1, 4).unwrap(), (word("0"), word("1")));
    }

    #[test]
    fn collision_q2_is_minimal() {
        let (a, b) = find_collision_pair(2, DEFAULT_MAX_LEN).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.len(), b.len());
        assert!(a.len() <= 16);
        assert!(q_indistinguishable(&a.0, &b.0, 2));
        let shorter = a.len() - 1;
        for i in 0..1u64 << shorter {
            for j in i + 1..1u64 << shorter {
                let (x, y) = (BitWord::from_code(i, shorter), BitWord::from_code(j, shorter));
                assert!(!q_indistinguishable(&x.0, &y.0, 2));
            }
        }
    }

    #[test]
    fn collision_search_reports_failure() {
        assert_eq!(find_collision_pair(2, 2).unwrap_err(), SeparationError::NoCollision { q: 2, max_len: 2 });
        assert_eq!(find_collision_pair(0, 2).unwrap_err(), SeparationError::ZeroBound);
    }

    #[test]
    fn sequences_q1() {
        let seq = build_sequences(1, DEFAULT_MAX_LEN).unwrap();
        let w = &seq.witnesses[0];
        assert_eq!((w.t, w.m), (1, 0));
        assert_eq!((w.x.clone(), w.y.clone()), (word("0"), word("1")));
        assert_eq!((seq.i0.clone(), seq.i1.clone()), (word("0"), word("1")));
        assert!(!seq.xor_sum(&w.x));
        assert!(seq.xor_sum(&w.y));
        assert!(seq.witness_holds(w));
    }

    #[test]
    fn sequences_q2() {
        let seq = build_sequences(2, DEFAULT_MAX_LEN).unwrap();
        assert_eq!(seq.witnesses.len(), 2);
        for w in &seq.witnesses {
            assert!(seq.witness_holds(w));
            assert_ne!(w.x.0[w.m], w.y.0[w.m]);
            assert!(w.m >= w.offset());
            assert!(w.x.0[..w.offset()].iter().all(|&b| !b));
        }
        assert_eq!(seq.i0.len(), seq.witnesses[1].block_lengths.iter().sum::<usize>());
        let json = serde_json::to_string(&seq).unwrap();
        assert!(json.contains("\"I0\""));
        assert_eq!(serde_json::from_str::<SequencePair>(&json).unwrap(), seq);
    }

    #[test]
    fn gadget_q1_shape() {
        let seq = build_sequences(1, DEFAULT_MAX_LEN).unwrap();
        let g = gadget(&seq.witnesses[0], &seq);
        assert_eq!(g.v, g.w);
        assert_eq!(g.arena.node_count(), 2);
        assert_eq!(g.arena.color_count(), 5);
        assert!(g.chain.is_empty());
        assert!(g.arena.validate().is_empty());
        assert_eq!(g.branch_ant(false), (pt(1, 0), pt(1, 0)));
        assert_eq!(g.branch_ant(true), (pt(1, 1), pt(1, 1)));
    }

    #[test]
    fn gadget_arithmetic_q2() {
        let seq = build_sequences(2, DEFAULT_MAX_LEN).unwrap();
        let w = &seq.witnesses[1];
        let g = gadget(w, &seq);
        assert!(g.arena.validate().is_empty());
        assert_eq!(g.chain.len(), w.t - 1);
        for (bottom, word) in [(false, &w.x), (true, &w.y)] {
            let (at_v, at_w) = g.branch_ant(bottom);
            assert_eq!(at_v.layer, w.t as u64);
            assert_eq!(at_w, OmegaPoint::new(1, seq.xor_sum(word)));
        }
        assert_ne!(g.branch_ant(false).1, g.branch_ant(true).1);
    }

    #[test]
    fn gadget_winner_and_swap() {
        for q in 1..=2 {
            let seq = build_sequences(q, DEFAULT_MAX_LEN).unwrap();
            let g = gadget(seq.witness(q).unwrap(), &seq);
            let s = gadget_winning_strategy(&g);
            assert_eq!(s.states(), 2);
            assert!(verify_strategy(&g.arena, &s, g.u).is_winning());
            let swapped = s.with_moves(&g.arena, |_, m| Some(g.loops[1 - m])).unwrap();
            assert!(!verify_strategy(&g.arena, &swapped, g.u).is_winning());
        }
    }

    #[test]
    fn gadget_winner_feeds_synthesis() {
        let seq = build_sequences(1, DEFAULT_MAX_LEN).unwrap();
        let g = gadget(&seq.witnesses[0], &seq);
        let s1 = gadget_winning_strategy(&g);
        assert!(crate::verify::cutoff_bound(&g.arena, &s1) > g.t as u64);
        let s2 = crate::synthesize::build_two_state(&g.arena, &s1, &[g.u]).unwrap();
        assert_eq!(s2.states(), 2);
        assert!(verify_strategy(&g.arena, &s2, g.u).is_winning());
    }

    #[test]
    fn refute_q1() {
        let seq = build_sequences(1, DEFAULT_MAX_LEN).unwrap();
        let g = gadget(&seq.witnesses[0], &seq);
        let r = refute_chromatic(&g, 1, DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(r.strategies(), 2);
        assert!(r.holds());
    }

    #[test]
    fn refute_respects_budget() {
        let seq = build_sequences(1, DEFAULT_MAX_LEN).unwrap();
        let g = gadget(&seq.witnesses[0], &seq);
        assert_eq!(sweep_size(&g.arena, 2), Some(2 + 1024 * 4));
        assert_eq!(
            refute_chromatic(&g, 2, 100).unwrap_err(),
            SeparationError::BudgetExceeded { needed: 4098, budget: 100 }
        );
    }

    #[test]
    fn pipeline_q1() {
        let r = separation(1, DEFAULT_MAX_LEN, DEFAULT_SWEEP_BUDGET).unwrap();
        assert!(r.holds());
        assert_eq!(r.winner_states, 2);
    }

    #[test]
    fn pipeline_without_sweep_does_not_hold() {
        let r = separation(1, DEFAULT_MAX_LEN, 1).unwrap();
        assert!(r.refutation.is_none());
        assert!(r.evidence.holds());
        assert!(!r.holds());
    }

    #[test]
    fn bitword_text() {
        assert_eq!(word("0110").to_string(), "0110");
        assert!("012".parse::<BitWord>().is_err());
        assert_eq!(BitWord::from_code(0b011, 4), word("0011"));
    }
}
