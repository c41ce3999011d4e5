//! The smallest arena where positional strategies are not enough.
//!
//! Antagonist opens with `u` or `v`; Protagonist then loops on `f0` or `f1`
//! forever. Whichever loop a positional strategy picks, one opening pushes
//! the ant up without bound. Two states of general memory fix that.

use ropeladder::fixtures;
use ropeladder::strategy::MemoryKind;
use ropeladder::verify::{search_winning_strategy, verify_strategy, winning_set, Certificate};

fn main() {
    let arena = fixtures::fact1_arena();
    let circle = arena.node_id("circle").unwrap();
    let [_, _, f0, f1] = fixtures::fact1_edges();

    for edge in [f0, f1] {
        let positional = fixtures::fact1_positional(&arena, edge);
        let verdict = verify_strategy(&arena, &positional, circle);
        print!("always {}: {:?}", arena.color_name_of(edge), verdict.outcome);
        if let Certificate::Losing { path, pump } = &verdict.certificate {
            let colors: Vec<_> = path.edges.iter().map(|&e| arena.color_name_of(e)).collect();
            print!(" via {} (pump {:?})", colors.join(" "), pump.map(|p| (p.from, p.to)));
        }
        println!();
    }

    assert!(search_winning_strategy(&arena, circle, 1, MemoryKind::Chromatic).is_none());
    let found = search_winning_strategy(&arena, circle, 2, MemoryKind::General).expect("two states suffice");
    let names: Vec<_> = winning_set(&arena, &found).into_iter().map(|v| arena.node(v).name.clone()).collect();
    println!("first 2-state general strategy found wins from {}", names.join(", "));
    print!("{}", ropeladder::strategy::serialize_strategy(&arena, &found));
}
