//! Seeded random instances for property tests, acceptance runs and
//! `simulate`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arena::{Arena, EdgeId, NodeId, Owner, Path};
use crate::omega::{BitMap, ColorMap, NamedMap, OmegaPoint};
use crate::strategy::{FiniteMemoryStrategy, MemoryKind, MemoryStructure};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for [`random_arena`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArenaShape {
    pub max_nodes: usize,
    pub max_out: usize,
    pub max_colors: usize,
}

impl Default for ArenaShape {
    fn default() -> Self {
        ArenaShape { max_nodes: 4, max_out: 4, max_colors: 4 }
    }
}

/// A monotone eventually-affine map with threshold at most `max_threshold`,
/// built by rejection sampling over small tables.
pub fn random_color_map(rng: &mut impl Rng, max_threshold: u64) -> ColorMap {
    loop {
        let threshold = rng.gen_range(0..=max_threshold);
        let shift = rng.gen_range(-(threshold as i64).min(1)..=2);
        let mut table = Vec::with_capacity(2 * threshold as usize);
        let mut floor = 0u64;
        for _ in 0..threshold {
            floor += rng.gen_range(0..=1);
            let layer = floor.min((threshold as i64 + shift).max(0) as u64);
            table.push(OmegaPoint::new(layer, rng.gen()));
            table.push(OmegaPoint::new(layer, rng.gen()));
        }
        let tail = *[BitMap::Identity, BitMap::Negate, BitMap::Const0, BitMap::Const1].choose(rng).unwrap();
        if let Ok(map) = ColorMap::new(threshold, table, shift, tail) {
            if map.check_monotone() {
                return map;
            }
        }
    }
}

/// A palette entry: a named map, a random incremental map, or a random
/// monotone map.
pub fn random_palette_map(rng: &mut impl Rng) -> ColorMap {
    match rng.gen_range(0..8) {
        0..=4 => ColorMap::named(NamedMap::ALL[rng.gen_range(0..NamedMap::ALL.len())]),
        5 | 6 => {
            let len = rng.gen_range(0..=4);
            let prefix: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
            ColorMap::incremental(&prefix, rng.gen())
        }
        _ => random_color_map(rng, 3),
    }
}

/// A valid arena: every node has between 1 and `max_out` outgoing edges.
pub fn random_arena(rng: &mut impl Rng, shape: ArenaShape) -> Arena {
    let mut b = Arena::builder();
    let n = rng.gen_range(1..=shape.max_nodes);
    let nodes: Vec<NodeId> = (0..n)
        .map(|i| {
            let owner = if rng.gen() { Owner::Protagonist } else { Owner::Antagonist };
            b.node(format!("n{i}"), owner).unwrap()
        })
        .collect();
    let colors: Vec<_> = (0..rng.gen_range(1..=shape.max_colors))
        .map(|i| b.color(format!("c{i}"), random_palette_map(rng)).unwrap())
        .collect();
    for &v in &nodes {
        for _ in 0..rng.gen_range(1..=shape.max_out) {
            let c = *colors.choose(rng).unwrap();
            let w = *nodes.choose(rng).unwrap();
            b.edge(v, c, w).unwrap();
        }
    }
    b.build()
}

/// A uniformly random memory structure and move table with exactly
/// `states` states.
pub fn random_strategy(rng: &mut impl Rng, arena: &Arena, states: usize, kind: MemoryKind) -> FiniteMemoryStrategy {
    let width = match kind {
        MemoryKind::General => arena.edge_count(),
        MemoryKind::Chromatic => arena.color_count(),
    };
    let table = (0..states * width).map(|_| rng.gen_range(0..states)).collect();
    let memory = MemoryStructure::with_kind(kind, states, 0, width, table).unwrap();
    FiniteMemoryStrategy::from_fn(arena, memory, |v, _| *arena.out_edges(v).choose(rng).unwrap()).unwrap()
}

/// Antagonist's choices for a play of length `len`: one out-edge per
/// Antagonist node visited.
pub fn random_script(
    rng: &mut impl Rng,
    arena: &Arena,
    strategy: &FiniteMemoryStrategy,
    start: NodeId,
    len: usize,
) -> Vec<EdgeId> {
    random_play(rng, arena, strategy, start, len)
        .edges
        .into_iter()
        .filter(|&e| !arena.is_protagonist(arena.edge(e).source))
        .collect()
}

/// A play of length `len` consistent with `strategy`, Antagonist moving
/// uniformly at random.
pub fn random_play(
    rng: &mut impl Rng,
    arena: &Arena,
    strategy: &FiniteMemoryStrategy,
    start: NodeId,
    len: usize,
) -> Path {
    let memory = strategy.memory();
    let (mut v, mut m) = (start, memory.initial());
    let mut edges = Vec::with_capacity(len);
    for _ in 0..len {
        let e = match strategy.next_move(v, m) {
            Some(e) => e,
            None => *arena.out_edges(v).choose(rng).unwrap(),
        };
        m = memory.transition(arena, m, e);
        v = arena.edge(e).target;
        edges.push(e);
    }
    Path { start, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_are_valid() {
        let mut r = rng(7);
        for _ in 0..200 {
            let a = random_arena(&mut r, ArenaShape::default());
            assert!(a.validate().is_empty(), "{}", a.serialize());
            let kind = if r.gen() { MemoryKind::General } else { MemoryKind::Chromatic };
            let states = r.gen_range(1..=3);
            let s = random_strategy(&mut r, &a, states, kind);
            let p = random_play(&mut r, &a, &s, 0, 10);
            assert!(s.is_consistent(&a, &p));
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_arena(&mut rng(3), ArenaShape::default());
        let b = random_arena(&mut rng(3), ArenaShape::default());
        assert_eq!(a.serialize(), b.serialize());
    }

    #[test]
    fn random_maps_are_monotone() {
        let mut r = rng(11);
        for _ in 0..500 {
            assert!(random_color_map(&mut r, 4).check_monotone());
        }
    }
}
