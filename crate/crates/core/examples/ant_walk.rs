//! Colors as monotone maps of Ω = ℕ × {0,1}, and the ant they move.

use ropeladder::omega::{pt, ColorMap, NamedMap, OmegaPoint};

fn main() {
    for which in NamedMap::ALL {
        let map = ColorMap::named(which);
        let row: Vec<String> = (0..3)
            .flat_map(|n| [pt(n, 0), pt(n, 1)])
            .map(|p| format!("{p}->{}", map.apply(p)))
            .collect();
        println!("{:>2}: {}", which.token(), row.join(" "));
    }

    // Composition applies the inner map first.
    let v = ColorMap::named(NamedMap::V);
    let f0 = ColorMap::named(NamedMap::F0);
    let f0_after_v = f0.compose(&v);
    println!("f0∘v: T={} d={} (0,0)->{}", f0_after_v.threshold(), f0_after_v.shift(), f0_after_v.apply(OmegaPoint::ZERO));

    // Incremental maps climb one layer per step and flip the bit where I_n = 1.
    let p = ColorMap::incremental(&[false, true, true], false);
    let mut ant = OmegaPoint::ZERO;
    let mut walk = vec![ant.to_string()];
    for _ in 0..5 {
        ant = p.apply(ant);
        walk.push(ant.to_string());
    }
    println!("incremental 011·0^ω: {}", walk.join(" "));

    let broken = ColorMap::new(1, vec![pt(2, 0), pt(0, 0)], 0, ropeladder::BitMap::Identity).unwrap();
    println!("(0,0)->(2,0), (0,1)->(0,0) monotone? {}", broken.check_monotone());
}
