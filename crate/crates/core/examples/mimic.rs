// Gauge-averaged sampling from the thermal state, the way an annealer
// would be read out, with bootstrap intervals over gauges.
//
//     cargo run --release --example mimic

use coising::experiment::{mimic_sweep, MimicConfig, SweepConfig};
use coising::graph::catalog;

pub fn run_example() -> coising::Result<()> {
    let cfg = SweepConfig {
        s_grid: vec![0.5],
        seed: 4,
        mimic: MimicConfig {
            num_gauges: 40,
            anneals_per_gauge: 200,
            bootstrap_resamples: 200,
            ..MimicConfig::default()
        },
        ..SweepConfig::default()
    };
    let (curves, runs) = mimic_sweep(&catalog::get("G13")?, "G13", &cfg)?;
    for c in &curves {
        let p = c.points[0];
        println!(
            "{:>13}: {:9.4} in [{:.4}, {:.4}]",
            c.observable, p.mean, p.ci_low, p.ci_high
        );
    }
    let first = &runs[0].rows[0];
    println!(
        "gauge 0 signs {:?}, energy {:.3}",
        first.signs, first.observables.energy
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> coising::Result<()> {
    run_example()
}
