// A tabulated annealing schedule in GHz with a physical temperature.
//
//     cargo run --release --example schedule

use coising::graph::catalog;
use coising::quantum::{beta_per_ghz, load_schedule, thermal_dense, IsingInstance};

const TABLE: &str = "s,A,B
0.0,6.0,0.1
0.3,2.5,0.9
0.6,0.6,2.6
1.0,0.0,5.0
";

pub fn run_example() -> coising::Result<()> {
    let beta = beta_per_ghz(12.0);
    let sched = load_schedule(TABLE)?.with_beta(beta)?;
    println!("beta at 12 mK: {beta:.3} / GHz");
    for s in [0.0, 0.45, 1.0] {
        let (a, b) = sched.coefficients(s)?;
        println!("s = {s}: A = {a:.3} GHz, B = {b:.3} GHz");
    }
    let inst = IsingInstance::from_graph(&catalog::get("G13")?);
    let obs = thermal_dense(&inst, 0.45, &sched)?.observables;
    println!(
        "G13 at s = 0.45: energy {:.4}, q2 {:.4}",
        obs.energy, obs.q2
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
