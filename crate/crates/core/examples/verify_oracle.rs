//! Random strategies on random arenas: the cutoff verifier against
//! exhaustive exploration of all plays up to a fixed depth.
//!
//! Usage: `cargo run --example verify_oracle -- [instances] [seed]`

use rand::Rng;
use ropeladder::random::{self, ArenaShape};
use ropeladder::strategy::MemoryKind;
use ropeladder::verify::{brute_force_max_layer, check_certificate, cutoff_bound, verify_strategy};

fn main() {
    let mut args = std::env::args().skip(1);
    let instances: usize = args.next().map_or(200, |a| a.parse().expect("instance count"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));
    let mut rng = random::rng(seed);
    let (mut winning, mut losing) = (0, 0);
    for _ in 0..instances {
        let arena = random::random_arena(&mut rng, ArenaShape::default());
        let kind = if rng.gen() { MemoryKind::General } else { MemoryKind::Chromatic };
        let states = rng.gen_range(1..=3);
        let strategy = random::random_strategy(&mut rng, &arena, states, kind);
        let start = rng.gen_range(0..arena.node_count());

        let verdict = verify_strategy(&arena, &strategy, start);
        let bound = cutoff_bound(&arena, &strategy);
        let k = (arena.node_count() * states * 2) as u64;
        let reached = brute_force_max_layer(&arena, &strategy, start, (3 * bound * k) as usize);
        assert_eq!(reached >= bound, !verdict.is_winning(), "disagreement on\n{}", arena.serialize());
        assert!(check_certificate(&arena, &strategy, &verdict));
        if verdict.is_winning() {
            winning += 1;
        } else {
            losing += 1;
        }
    }
    println!("{instances} instances: {winning} winning, {losing} losing, verifier and oracle agree");
}
