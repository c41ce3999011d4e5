use proptest::prelude::*;
use rand::Rng;

use ropeladder::arena::Arena;
use ropeladder::omega::{BitMap, ColorMap, OmegaPoint};
use ropeladder::random::{self, ArenaShape};
use ropeladder::separation::{find_collision_pair, q_indistinguishable, BitWord};
use ropeladder::strategy::{parse_strategy, play, product, serialize_strategy, FiniteMemoryStrategy, MemoryKind};
use ropeladder::verify::{brute_force_max_layer, check_certificate, verify_strategy};

fn point() -> impl Strategy<Value = OmegaPoint> {
    (0u64..24, any::<bool>()).prop_map(|(n, b)| OmegaPoint::new(n, b))
}

fn monotone_map() -> impl Strategy<Value = ColorMap> {
    any::<u64>().prop_map(|seed| random::random_palette_map(&mut random::rng(seed)))
}

/// Arbitrary, not necessarily monotone, eventually-affine map.
fn raw_map() -> impl Strategy<Value = ColorMap> {
    (0u64..4, 0i64..3, 0usize..4, any::<u64>()).prop_map(|(t, d, beta, seed)| {
        let mut rng = random::rng(seed);
        let top = (t as i64 + d) as u64 + 1;
        let table = (0..2 * t).map(|_| OmegaPoint::new(rng.gen_range(0..=top), rng.gen())).collect();
        let tail = [BitMap::Identity, BitMap::Negate, BitMap::Const0, BitMap::Const1][beta];
        ColorMap::new(t, table, d, tail).unwrap()
    })
}

fn instance(seed: u64) -> (Arena, FiniteMemoryStrategy) {
    let mut rng = random::rng(seed);
    let a = random::random_arena(&mut rng, ArenaShape::default());
    let kind = if rng.gen() { MemoryKind::General } else { MemoryKind::Chromatic };
    let states = rng.gen_range(1..=3);
    let s = random::random_strategy(&mut rng, &a, states, kind);
    (a, s)
}

/// Maximum layer over every play of length at most `depth`, enumerated one
/// by one.
fn every_play_max_layer(a: &Arena, s: &FiniteMemoryStrategy, v: usize, m: usize, p: OmegaPoint, depth: usize) -> u64 {
    if depth == 0 {
        return p.layer;
    }
    let moves = match s.next_move(v, m) {
        Some(e) => vec![e],
        None => a.out_edges(v).to_vec(),
    };
    moves
        .into_iter()
        .map(|e| {
            let q = a.edge_map(e).apply(p);
            let next = every_play_max_layer(a, s, a.edge(e).target, s.memory().transition(a, m, e), q, depth - 1);
            next.max(p.layer)
        })
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn compose_applies_inner_first(f in monotone_map(), g in monotone_map(), p in point()) {
        prop_assert_eq!(f.compose(&g).apply(p), f.apply(g.apply(p)));
    }

    #[test]
    fn composition_stays_monotone(f in monotone_map(), g in monotone_map()) {
        prop_assert!(f.compose(&g).check_monotone());
    }

    #[test]
    fn monotone_check_matches_brute_force(f in raw_map()) {
        let limit = f.threshold() + 6;
        let mut brute = true;
        for n in 0..limit {
            for m in n + 1..limit {
                for a in [false, true] {
                    for b in [false, true] {
                        let (x, y) = (f.apply(OmegaPoint::new(n, a)), f.apply(OmegaPoint::new(m, b)));
                        brute &= x.leq(y);
                    }
                }
            }
        }
        prop_assert_eq!(f.check_monotone(), brute);
    }

    #[test]
    fn monotone_maps_preserve_order(f in monotone_map(), p in point(), q in point()) {
        if p.leq(q) {
            prop_assert!(f.apply(p).leq(f.apply(q)));
        }
    }

    #[test]
    fn arena_text_round_trips(seed in any::<u64>()) {
        let (a, s) = instance(seed);
        let text = a.serialize();
        let back = Arena::parse(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
        let s_text = serialize_strategy(&a, &s);
        prop_assert_eq!(parse_strategy(&back, &s_text).unwrap(), s);
    }

    #[test]
    fn common_prefix_keeps_indistinguishability(q in 1usize..=3, prefix in proptest::collection::vec(any::<bool>(), 0..12)) {
        let (a, b) = find_collision_pair(q, 16).unwrap();
        let w = BitWord(prefix);
        prop_assert!(q_indistinguishable(w.concat(&a).bits(), w.concat(&b).bits(), q));
    }

    #[test]
    fn play_follows_product(seed in any::<u64>(), len in 0usize..40) {
        let (a, s) = instance(seed);
        let mut rng = random::rng(seed ^ 1);
        let start = rng.gen_range(0..a.node_count());
        let script = random::random_script(&mut rng, &a, &s, start, len);
        let path = play(&a, &s, start, &script, len).unwrap();
        let g = product(&a, &s);
        let mut at = g.index_of(start, s.memory().initial()).unwrap();
        for &e in &path.edges {
            let step = g.successors(at).iter().find(|pe| pe.arena_edge == e);
            prop_assert!(step.is_some());
            at = step.unwrap().target;
        }
        prop_assert_eq!(g.node(at), (path.target(&a), s.state_after(&a, &path)));
    }

    #[test]
    fn pruned_oracle_is_exact(seed in any::<u64>(), depth in 0usize..6) {
        let (a, s) = instance(seed);
        let plain = every_play_max_layer(&a, &s, 0, s.memory().initial(), OmegaPoint::ZERO, depth);
        prop_assert_eq!(brute_force_max_layer(&a, &s, 0, depth), plain);
    }

    #[test]
    fn certificates_replay(seed in any::<u64>()) {
        let (a, s) = instance(seed);
        for v in 0..a.node_count() {
            let verdict = verify_strategy(&a, &s, v);
            prop_assert!(check_certificate(&a, &s, &verdict));
        }
    }
}
