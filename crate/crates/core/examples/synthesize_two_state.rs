//! Shrinking a winning strategy to two states of general memory.
//!
//! Searches random arenas for a 3-state strategy whose reachable ant
//! positions have two maxima at some node, then prints the per-node tables
//! and checks the result.

use ropeladder::random::{self, ArenaShape};
use ropeladder::strategy::{serialize_strategy, MemoryKind};
use ropeladder::synthesize::{synthesize, DEFAULT_IRREGULAR_CAP};
use ropeladder::verify::winning_set;

fn main() {
    let mut rng = random::rng(42);
    let (arena, u, synthesis) = loop {
        let arena = random::random_arena(&mut rng, ArenaShape::default());
        let s1 = random::random_strategy(&mut rng, &arena, 3, MemoryKind::General);
        let u = winning_set(&arena, &s1);
        let synthesis = synthesize(&arena, &s1, &u, DEFAULT_IRREGULAR_CAP).expect("s1 wins on u");
        if synthesis.tables.nodes.values().any(|t| t.maxima[0] != t.maxima[1]) {
            break (arena, u, synthesis);
        }
    };
    print!("{}", arena.serialize());
    println!("{} irregular plays of the 3-state input", synthesis.irregular.len());
    for line in synthesis.report_lines(&arena) {
        println!("{line}");
    }
    let won = winning_set(&arena, &synthesis.strategy);
    assert!(u.iter().all(|v| won.contains(v)));
    println!("input wins on {u:?}, two-state output wins on {won:?}");
    print!("{}", serialize_strategy(&arena, &synthesis.strategy));
}
