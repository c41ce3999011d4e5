//! Word pairs no small automaton tells apart, and the bit sequences built
//! from them.

use ropeladder::separation::{build_sequences, enum_dfas, find_collision_pair, q_indistinguishable, DEFAULT_MAX_LEN};

fn main() {
    for q in 1..=3 {
        let (a, b) = find_collision_pair(q, DEFAULT_MAX_LEN).expect("pair exists");
        let separated_by_more = !q_indistinguishable(a.bits(), b.bits(), q + 1);
        println!(
            "Q={q}: {} automata, shortest pair {a} / {b}; {} states {} them apart",
            enum_dfas(q).len(),
            q + 1,
            if separated_by_more { "tell" } else { "do not tell" }
        );
    }
    let seq = build_sequences(3, DEFAULT_MAX_LEN).unwrap();
    println!("I0 = {}\nI1 = {}", seq.i0, seq.i1);
    for w in &seq.witnesses {
        println!(
            "Q={} x={} y={} m={} parities {} vs {}",
            w.q,
            w.x,
            w.y,
            w.m,
            seq.xor_sum(&w.x) as u8,
            seq.xor_sum(&w.y) as u8
        );
    }
}
