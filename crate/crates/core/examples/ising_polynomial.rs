// Classical Ising polynomials and the co-Ising check.
//
//     cargo run --release --example ising_polynomial

use coising::graph::catalog;
use coising::poly::{articulation_points, classical_spectrum, classical_spectrum_auto, co_ising};

pub fn run_example() -> coising::Result<()> {
    let g13 = catalog::get("G13")?;
    let p = classical_spectrum(&g13)?;
    println!("G13: {} terms, {} states", p.terms().len(), p.total());
    for (e, count) in p.energy_spectrum().iter().take(4) {
        println!("  energy {e}: {count} states");
    }

    // Large graphs split at cut vertices instead of visiting 2^n states.
    let g33 = catalog::get("G33")?;
    let cuts: Vec<usize> = articulation_points(&g33).iter().map(|v| v + 1).collect();
    println!("G33 cut vertices: {cuts:?}");
    let big = classical_spectrum_auto(&g33)?;
    println!("G33: {} terms, {} states", big.terms().len(), big.total());

    for (a, b) in [("G13", "G13p"), ("G33", "G33p"), ("G13", "G17")] {
        println!(
            "{a} vs {b}: co-Ising {}",
            co_ising(&catalog::get(a)?, &catalog::get(b)?)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
