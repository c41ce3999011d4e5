//! The lower-bound arena for one memory bound, written to disk.
//!
//! Usage: `cargo run --example gadget -- [Q] [out-dir]`

use ropeladder::separation::{build_sequences, gadget, gadget_winning_strategy, DEFAULT_MAX_LEN};
use ropeladder::strategy::serialize_strategy;
use ropeladder::verify::verify_strategy;

fn main() {
    let mut args = std::env::args().skip(1);
    let q: usize = args.next().map_or(2, |a| a.parse().expect("Q"));
    let dir = std::path::PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let seq = build_sequences(q, DEFAULT_MAX_LEN).expect("sequences");
    let g = gadget(seq.witness(q).unwrap(), &seq);
    for (name, bottom) in [("top", false), ("bottom", true)] {
        let (at_v, at_w) = g.branch_ant(bottom);
        println!("{name} branch: ant {at_v} at v, {at_w} at w");
    }
    let winner = gadget_winning_strategy(&g);
    println!("2-state strategy wins from u: {}", verify_strategy(&g.arena, &winner, g.u).is_winning());
    std::fs::create_dir_all(&dir).unwrap();
    let arena_path = dir.join(format!("gadget-q{q}.arena"));
    std::fs::write(&arena_path, g.arena.serialize()).unwrap();
    std::fs::write(dir.join(format!("gadget-q{q}.strategy")), serialize_strategy(&g.arena, &winner)).unwrap();
    println!("wrote {} ({} nodes, {} edges)", arena_path.display(), g.arena.node_count(), g.arena.edge_count());
}
