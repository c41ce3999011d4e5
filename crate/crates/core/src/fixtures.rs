//! Small hand-built arenas and strategies used by the examples and tests.

use crate::arena::{Arena, EdgeId, Owner};
use crate::omega::{ColorMap, NamedMap};
use crate::strategy::{FiniteMemoryStrategy, MemoryStructure};

/// Antagonist `circle` moves to Protagonist `square` by `u` or `v`; `square`
/// loops on `f0` and `f1`. Edges are numbered `u, v, f0, f1`.
pub fn fact1_arena() -> Arena {
    let mut b = Arena::builder();
    let circle = b.node("circle", Owner::Antagonist).unwrap();
    let square = b.node("square", Owner::Protagonist).unwrap();
    let colors: Vec<_> = [NamedMap::U, NamedMap::V, NamedMap::F0, NamedMap::F1]
        .into_iter()
        .map(|m| b.color(m.token(), ColorMap::named(m)).unwrap())
        .collect();
    b.edge(circle, colors[0], square).unwrap();
    b.edge(circle, colors[1], square).unwrap();
    b.edge(square, colors[2], square).unwrap();
    b.edge(square, colors[3], square).unwrap();
    b.build()
}

/// Edge indices of [`fact1_arena`]: `[u, v, f0, f1]`.
pub fn fact1_edges() -> [EdgeId; 4] {
    [0, 1, 2, 3]
}

/// Two states of general memory: the state records whether Antagonist
/// opened with `u` (0) or `v` (1); `square` answers `f0` or `f1` accordingly.
pub fn fact1_winner(arena: &Arena) -> FiniteMemoryStrategy {
    let [u, v, f0, f1] = fact1_edges();
    let mut table = vec![0; 2 * arena.edge_count()];
    for m in 0..2 {
        table[m * 4 + u] = 0;
        table[m * 4 + v] = 1;
        table[m * 4 + f0] = m;
        table[m * 4 + f1] = m;
    }
    let memory = MemoryStructure::general(2, arena.edge_count(), table).unwrap();
    FiniteMemoryStrategy::from_fn(arena, memory, |_, m| if m == 0 { f0 } else { f1 }).unwrap()
}

/// The positional strategy that always takes `edge` at `square`.
pub fn fact1_positional(arena: &Arena, edge: EdgeId) -> FiniteMemoryStrategy {
    FiniteMemoryStrategy::positional(arena, |_| edge).unwrap()
}

/// A single Protagonist node with an `f0` self-loop.
pub fn f0_self_loop() -> Arena {
    let mut b = Arena::builder();
    let v = b.node("v", Owner::Protagonist).unwrap();
    let f0 = b.color("f0", ColorMap::named(NamedMap::F0)).unwrap();
    b.edge(v, f0, v).unwrap();
    b.build()
}

/// [`fact1_arena`] in the text format, as shipped in `fixtures/fact1.arena`.
pub const FACT1_ARENA_TEXT: &str = include_str!("../fixtures/fact1.arena");
