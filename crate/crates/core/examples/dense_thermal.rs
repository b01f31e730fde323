// Exact thermal averages of the transverse-field Hamiltonian.
//
//     cargo run --release --example dense_thermal

use coising::graph::catalog;
use coising::quantum::{default_schedule, thermal_dense, IsingInstance, Observable};

pub fn run_example() -> coising::Result<()> {
    let sched = default_schedule();
    let g = IsingInstance::from_graph(&catalog::get("G13")?);
    let h = IsingInstance::from_graph(&catalog::get("G13p")?);
    println!("   s   E(G13)     E(G13p)    dE");
    for s in [0.0, 0.425, 1.0] {
        let a = thermal_dense(&g, s, &sched)?.observables;
        let b = thermal_dense(&h, s, &sched)?.observables;
        println!(
            "{s:5.3} {:10.6} {:10.6} {:+.3e}",
            a.energy,
            b.energy,
            a.energy - b.energy
        );
    }
    let end = thermal_dense(&g, 1.0, &sched)?.observables;
    for o in Observable::ALL {
        println!("G13 at s=1: {o} = {:.6}", end.get(o));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
