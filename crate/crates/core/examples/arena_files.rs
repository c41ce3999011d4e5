//! Reading, checking and writing the text formats.

use ropeladder::arena::Arena;
use ropeladder::fixtures::FACT1_ARENA_TEXT;
use ropeladder::strategy::{parse_strategy, serialize_strategy};

const BROKEN: &str = "\
arena v1
node a P
node b A
color up builtin=u
color odd T=1 d=0 beta=id table=[(0,0)->(2,0),(0,1)->(0,0)]
edge a up b
";

fn main() {
    let arena = Arena::parse(FACT1_ARENA_TEXT).unwrap();
    println!("fact1: {} nodes, {} edges, valid: {}", arena.node_count(), arena.edge_count(), arena.validate().is_empty());
    print!("{}", arena.serialize());

    let strategy = parse_strategy(&arena, include_str!("../fixtures/fact1-winner.strategy")).unwrap();
    assert_eq!(parse_strategy(&arena, &serialize_strategy(&arena, &strategy)).unwrap(), strategy);

    let broken = Arena::parse(BROKEN).unwrap();
    for v in broken.validate() {
        println!("violation: {v}");
    }
    match Arena::parse("arena v1\nnode a X\n") {
        Err(e) => println!("parse error: {e}"),
        Ok(_) => unreachable!(),
    }
}
