//! End-to-end acceptance run: one line per criterion, non-zero exit on any
//! failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use ropeladder::fixtures;
use ropeladder::omega::{pt, ColorMap, NamedMap, OmegaPoint};
use ropeladder::random::{self, ArenaShape};
use ropeladder::separation::{self, DEFAULT_MAX_LEN};
use ropeladder::strategy::MemoryKind;
use ropeladder::synthesize::{synthesize, DEFAULT_IRREGULAR_CAP};
use ropeladder::verify::{
    brute_force_max_layer, check_certificate, cutoff_bound, search_winning_strategy, verify_strategy, winning_set,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))?;
    Ok(spent)
}

fn fact1() -> Outcome {
    let start = Instant::now();
    let a = fixtures::fact1_arena();
    let circle = a.node_id("circle").unwrap();
    let [_, _, f0, f1] = fixtures::fact1_edges();
    for edge in [f0, f1] {
        let s = fixtures::fact1_positional(&a, edge);
        ensure(!verify_strategy(&a, &s, circle).is_winning(), || format!("positional edge {edge} wins"))?;
    }
    ensure(search_winning_strategy(&a, circle, 1, MemoryKind::Chromatic).is_none(), || {
        "a positional strategy wins".into()
    })?;
    let found = search_winning_strategy(&a, circle, 2, MemoryKind::General).ok_or("no 2-state strategy found")?;
    ensure(found.states() == 2 && verify_strategy(&a, &found, circle).is_winning(), || {
        "search result is not a verified winner".into()
    })?;
    let spent = within(start, Duration::from_secs(1))?;
    Ok(format!("both positional strategies lose, 2-state general winner found ({spent:?})"))
}

/// The depicted arrows, written out case by case.
fn expected(which: NamedMap, n: u64, a: bool) -> OmegaPoint {
    let p = OmegaPoint::new;
    match which {
        NamedMap::U => p(n + 1, a),
        NamedMap::V => p(n + 1, !a),
        NamedMap::F0 | NamedMap::F1 => {
            let b = which == NamedMap::F1;
            if n == 0 || (n == 1 && a == b) {
                p(n, a)
            } else {
                p(n + 1, a)
            }
        }
        NamedMap::H => {
            if n > 1 {
                p(n - 1, a)
            } else {
                p(0, false)
            }
        }
    }
}

fn named_maps() -> Outcome {
    let mut checked = 0;
    for which in NamedMap::ALL {
        let map = ColorMap::named(which);
        for n in 0..=3 {
            for a in [false, true] {
                let got = map.apply(OmegaPoint::new(n, a));
                let want = expected(which, n, a);
                ensure(got == want, || format!("{}({}) = {got}, expected {want}", which.token(), OmegaPoint::new(n, a)))?;
                checked += 1;
            }
        }
    }
    ensure(ColorMap::named(NamedMap::F0).apply(pt(1, 1)) == pt(2, 1), || "f0(1,1) != (2,1)".into())?;
    Ok(format!("{checked} arrows match across u, v, f0, f1, h"))
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(0x5eed_0003);
    let (mut wins, mut losses) = (0, 0);
    for i in 0..500 {
        let a = random::random_arena(&mut rng, ArenaShape { max_nodes: 4, max_out: 4, max_colors: 4 });
        let kind = if rng.gen() { MemoryKind::General } else { MemoryKind::Chromatic };
        let states = rng.gen_range(1..=3);
        let s = random::random_strategy(&mut rng, &a, states, kind);
        let v = rng.gen_range(0..a.node_count());
        let verdict = verify_strategy(&a, &s, v);
        let bound = cutoff_bound(&a, &s);
        let k = (a.node_count() * s.states() * 2) as u64;
        let reached = brute_force_max_layer(&a, &s, v, (3 * bound * k) as usize);
        ensure((reached >= bound) != verdict.is_winning(), || {
            format!("instance {i}: verdict {:?}, oracle layer {reached}, B={bound}\n{}", verdict.outcome, a.serialize())
        })?;
        ensure(check_certificate(&a, &s, &verdict), || format!("instance {i}: certificate does not replay"))?;
        if verdict.is_winning() {
            wins += 1;
        } else {
            losses += 1;
        }
    }
    let spent = within(start, Duration::from_secs(60))?;
    Ok(format!("500 instances agree ({wins} winning, {losses} losing, {spent:?})"))
}

fn two_state_synthesis() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(0x5eed_0004);
    let mut instances = 0;
    let mut multi_state = 0;
    let mut tries = 0;
    while instances < 100 {
        tries += 1;
        ensure(tries < 100_000, || format!("only {instances} instances found"))?;
        let a = random::random_arena(&mut rng, ArenaShape::default());
        let states = rng.gen_range(1..=3);
        let s1 = random::random_strategy(&mut rng, &a, states, MemoryKind::General);
        let u = winning_set(&a, &s1);
        if u.is_empty() {
            continue;
        }
        instances += 1;
        if states > 1 {
            multi_state += 1;
        }
        let synth = synthesize(&a, &s1, &u, DEFAULT_IRREGULAR_CAP).map_err(|e| format!("instance {instances}: {e}"))?;
        ensure(synth.strategy.states() == 2, || "output does not have 2 states".into())?;
        let won: BTreeSet<_> = winning_set(&a, &synth.strategy).into_iter().collect();
        ensure(u.iter().all(|x| won.contains(x)), || {
            format!("instance {instances}: S2 wins on {won:?}, S1 on {u:?}\n{}", a.serialize())
        })?;
        for _ in 0..1000 {
            let from = u[rng.gen_range(0..u.len())];
            let len = rng.gen_range(0..=30);
            let play = random::random_play(&mut rng, &a, &synth.strategy, from, len);
            ensure(synth.invariant_holds(&a, &play), || {
                format!("instance {instances}: invariant broken on {:?}", play.edges)
            })?;
        }
    }
    Ok(format!(
        "100 instances ({multi_state} with S1 of 2-3 states, {tries} tried), 100000 sampled plays ({:?})",
        start.elapsed()
    ))
}

/// End states of every `q`-state canonical automaton, computed here without
/// the library's enumeration.
fn distinguishable(x: &[bool], y: &[bool], q: usize) -> bool {
    let tables = q.pow(2 * q as u32);
    (0..tables).any(|mut index| {
        let mut delta = vec![0; 2 * q];
        for d in delta.iter_mut() {
            *d = index % q;
            index /= q;
        }
        let run = |w: &[bool]| w.iter().fold(0, |s, &b| delta[2 * s + b as usize]);
        run(x) != run(y)
    })
}

fn xor_fold(seq: &separation::SequencePair, word: &[bool]) -> bool {
    word.iter().enumerate().fold(false, |acc, (n, &w)| {
        let bits = if w { &seq.i1 } else { &seq.i0 };
        acc ^ bits.bits().get(n).copied().unwrap_or(false)
    })
}

fn indistinguishable_pairs() -> Outcome {
    let start = Instant::now();
    let seq = separation::build_sequences(2, DEFAULT_MAX_LEN).map_err(|e| e.to_string())?;
    let q2 = within(start, Duration::from_secs(10))?;
    let mut notes = Vec::new();
    for w in &seq.witnesses {
        ensure(w.x != w.y && w.x.len() == w.t && w.y.len() == w.t, || format!("Q={}: malformed words", w.q))?;
        ensure(!distinguishable(w.x.bits(), w.y.bits(), w.q), || format!("Q={}: words are distinguishable", w.q))?;
        ensure(xor_fold(&seq, w.x.bits()) != xor_fold(&seq, w.y.bits()), || format!("Q={}: XOR sums agree", w.q))?;
        notes.push(format!("Q={} x={} y={}", w.q, w.x, w.y));
    }
    let seq3 = separation::build_sequences(3, DEFAULT_MAX_LEN).map_err(|e| e.to_string())?;
    let w3 = seq3.witness(3).map_err(|e| e.to_string())?;
    ensure(!distinguishable(w3.x.bits(), w3.y.bits(), 3), || "Q=3 words are distinguishable".into())?;
    ensure(xor_fold(&seq3, w3.x.bits()) != xor_fold(&seq3, w3.y.bits()), || "Q=3 XOR sums agree".into())?;
    notes.push(format!("Q=3 t={}", w3.t));
    Ok(format!("{} (Q=2 search {q2:?})", notes.join(", ")))
}

fn separation_at_scale() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for q in 1..=2 {
        let seq = separation::build_sequences(q, DEFAULT_MAX_LEN).map_err(|e| e.to_string())?;
        let g = separation::gadget(seq.witness(q).map_err(|e| e.to_string())?, &seq);
        let winner = separation::gadget_winning_strategy(&g);
        ensure(winner.states() == 2 && verify_strategy(&g.arena, &winner, g.u).is_winning(), || {
            format!("Q={q}: 2-state strategy does not win")
        })?;
        let report = separation::refute_chromatic(&g, q, u64::MAX).map_err(|e| format!("Q={q}: {e}"))?;
        ensure(report.holds(), || format!("Q={q}: sweep report inconsistent"))?;
        notes.push(format!("Q={q}: {} chromatic strategies lose", report.strategies()));
    }
    let spent = within(start, Duration::from_secs(300))?;
    Ok(format!("{} ({spent:?})", notes.join(", ")))
}

fn gadget_arithmetic() -> Outcome {
    let mut notes = Vec::new();
    for q in 1..=2 {
        let seq = separation::build_sequences(q, DEFAULT_MAX_LEN).map_err(|e| e.to_string())?;
        let w = seq.witness(q).map_err(|e| e.to_string())?;
        let g = separation::gadget(w, &seq);
        for (bottom, word) in [(false, &w.x), (true, &w.y)] {
            let (at_v, at_w) = g.branch_ant(bottom);
            ensure(at_v.layer == w.t as u64, || format!("Q={q}: layer {} at v, expected {}", at_v.layer, w.t))?;
            let want = OmegaPoint::new(1, xor_fold(&seq, word.bits()));
            ensure(at_w == want, || format!("Q={q}: ant {at_w} at w, expected {want}"))?;
        }
        notes.push(format!("Q={q} t={} top={} bottom={}", w.t, g.branch_ant(false).1, g.branch_ant(true).1));
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("fact1 fixture", fact1),
        ("named-map table", named_maps),
        ("verifier-oracle agreement", oracle_agreement),
        ("two-state synthesis", two_state_synthesis),
        ("indistinguishable pairs", indistinguishable_pairs),
        ("separation at scale", separation_at_scale),
        ("gadget arithmetic", gadget_arithmetic),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
